#include "skewinfo/quantum_objects.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "skewinfo/error.hpp"

namespace skewinfo {

std::string_view to_string(Convention c) {
    return c == Convention::RowSum ? "row_sum" : "column_sum";
}

Convention convention_from_string(std::string_view name) {
    if (name == "row_sum") return Convention::RowSum;
    if (name == "column_sum") return Convention::ColumnSum;
    throw Error(ErrorKind::ParseError,
                "convention must be \"row_sum\" or \"column_sum\", got \"" + std::string(name) +
                    "\"");
}

// ---------------------------------------------------------------------------
// Rng

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = complex_normal();
    return g;
}

// ---------------------------------------------------------------------------
// Validation

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::NotSquare, "density matrix is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
    }
    if (!all_finite(m)) throw Error(ErrorKind::ParseError, "density matrix has non-finite entries");

    const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    // psd_sqrt reports NotHermitian / NotPSD with magnitudes.
    ComplexMatrix root = psd_sqrt(m, tol);
    if (trace_dev > tol) {
        throw Error(ErrorKind::TraceNotOne, "|Tr(rho) - 1| = " + std::to_string(trace_dev),
                    trace_dev);
    }
    return DensityMatrix(m, std::move(root), tol);
}

double completeness_residual(const std::vector<ComplexMatrix>& ops, Convention c) {
    const Eigen::Index d = ops.front().rows();
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (const auto& k : ops) {
        if (c == Convention::RowSum)
            acc.noalias() += k * k.adjoint();
        else
            acc.noalias() += k.adjoint() * k;
    }
    return max_abs(acc - ComplexMatrix::Identity(d, d));
}

KrausChannel validate_channel(std::vector<ComplexMatrix> ops, Convention convention, double tol) {
    if (ops.empty()) throw Error(ErrorKind::InvalidCount, "channel has no Kraus operators");
    const Eigen::Index d = ops.front().rows();
    for (const auto& k : ops) {
        if (k.rows() != k.cols() || k.rows() == 0)
            throw Error(ErrorKind::NotSquare, "Kraus operators must be square");
        if (k.rows() != d)
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators have differing dimensions");
        if (!all_finite(k)) throw Error(ErrorKind::ParseError, "Kraus operator has non-finite entries");
    }
    if (static_cast<Eigen::Index>(ops.size()) > d * d) {
        throw Error(ErrorKind::InvalidCount,
                    std::to_string(ops.size()) + " Kraus operators exceed d^2 = " +
                        std::to_string(d * d));
    }
    const double residual = completeness_residual(ops, convention);
    if (!(residual <= tol)) {
        const char* rel = convention == Convention::RowSum ? "sum K K^dagger" : "sum K^dagger K";
        throw Error(ErrorKind::CompletenessViolated,
                    std::string(to_string(convention)) + " residual max|" + rel +
                        " - I| = " + std::to_string(residual),
                    residual);
    }
    return KrausChannel(std::move(ops), convention, tol);
}

ComplexMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "channel and state dimensions differ");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : channel.operators()) out += k * rho.rho() * k.adjoint();
    return out;
}

// ---------------------------------------------------------------------------
// Random instances

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, Rng& rng) {
    if (d < 1 || rank < 1 || rank > d) {
        throw Error(ErrorKind::InvalidRank,
                    "rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
    }
    const ComplexMatrix g = rng.gaussian_matrix(d, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return validate_density(rho);
}

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, RandomSeed seed) {
    Rng rng(seed);
    return random_density(d, rank, rng);
}

namespace {

// Q factor of a tall Gaussian matrix with the phases of R's diagonal removed.
ComplexMatrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    const ComplexMatrix g = rng.gaussian_matrix(rows, cols);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
    const ComplexMatrix& packed = qr.matrixQR();
    for (Eigen::Index k = 0; k < cols; ++k) {
        const Complex r = packed(k, k);
        if (std::abs(r) > 0.0) q.col(k) *= r / std::abs(r);
    }
    return q;
}

}  // namespace

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
    if (n < 1) throw Error(ErrorKind::InvalidCount, "unitary size must be positive");
    return haar_isometry(n, n, rng);
}

ComplexMatrix random_unitary(Eigen::Index n, RandomSeed seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

KrausChannel random_channel(Eigen::Index d, Eigen::Index n_kraus, Convention convention,
                            Rng& rng) {
    if (d < 1 || n_kraus < 1 || n_kraus > d * d) {
        throw Error(ErrorKind::InvalidCount, "n_kraus " + std::to_string(n_kraus) +
                                                 " outside [1, " + std::to_string(d * d) + "]");
    }
    const ComplexMatrix v = haar_isometry(n_kraus * d, d, rng);
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<std::size_t>(n_kraus));
    for (Eigen::Index i = 0; i < n_kraus; ++i) {
        ComplexMatrix block = v.middleRows(i * d, d);
        ops.push_back(convention == Convention::ColumnSum ? block : ComplexMatrix(block.adjoint()));
    }
    return validate_channel(std::move(ops), convention, 1e-12);
}

KrausChannel random_channel(Eigen::Index d, Eigen::Index n_kraus, Convention convention,
                            RandomSeed seed) {
    Rng rng(seed);
    return random_channel(d, n_kraus, convention, rng);
}

KrausChannel mix_kraus(const KrausChannel& channel, const ComplexMatrix& u) {
    const auto n = static_cast<Eigen::Index>(channel.size());
    if (u.rows() != n || u.cols() != n) {
        throw Error(ErrorKind::SizeMismatch, "mixing matrix is " + std::to_string(u.rows()) + "x" +
                                                 std::to_string(u.cols()) + " for " +
                                                 std::to_string(n) + " Kraus operators");
    }
    const double unitarity = max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
    if (unitarity > 1e-10)
        throw Error(ErrorKind::NotUnitary, "max|U^dagger U - I| = " + std::to_string(unitarity),
                    unitarity);

    const Eigen::Index d = channel.dim();
    std::vector<ComplexMatrix> mixed(channel.size(), ComplexMatrix::Zero(d, d));
    for (Eigen::Index t = 0; t < n; ++t)
        for (Eigen::Index s = 0; s < n; ++s) mixed[t] += u(t, s) * channel[s];
    // Residual grows only by rounding; keep the source tolerance plus slack.
    return validate_channel(std::move(mixed), channel.convention(),
                            std::max(channel.completeness_tol(), 1e-10));
}

}  // namespace skewinfo
