#include "skewinfo/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skewinfo/error.hpp"

namespace skewinfo {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::TraceNotOne: return "TraceNotOne";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::CompletenessViolated: return "CompletenessViolated";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::InvalidRank: return "InvalidRank";
        case ErrorKind::InvalidCount: return "InvalidCount";
        case ErrorKind::InvalidPermutation: return "InvalidPermutation";
        case ErrorKind::InvalidIndices: return "InvalidIndices";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::InvalidT: return "InvalidT";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermitian_asymmetry(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::NotSquare,
                    std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    }
}

}  // namespace

HermitianEig hermitian_eigendecompose(const ComplexMatrix& m, double hermiticity_tol) {
    require_square(m, "matrix");
    const double asym = hermitian_asymmetry(m);
    if (!(asym <= hermiticity_tol)) {
        throw Error(ErrorKind::NotHermitian,
                    "max |M - M^dagger| = " + std::to_string(asym), asym);
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};

    // Fix the phase of each eigenvector so its largest-modulus component is
    // real positive (first such index wins on ties).
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < out.eigenvectors.rows(); ++r) {
            const double a = std::abs(out.eigenvectors(r, c));
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                pivot = r;
            }
        }
        const Complex z = out.eigenvectors(pivot, c);
        if (std::abs(z) > 0.0) out.eigenvectors.col(c) *= std::conj(z) / std::abs(z);
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho, double tol) {
    const HermitianEig eig = hermitian_eigendecompose(rho, tol);
    const double lowest = eig.eigenvalues.size() > 0 ? eig.eigenvalues(0) : 0.0;
    if (lowest < -tol) {
        throw Error(ErrorKind::NotPSD, "most negative eigenvalue " + std::to_string(lowest),
                    lowest);
    }
    // Eigenvalues at the solver's rounding level are zeros of a rank-deficient
    // input; the square root would otherwise inflate 1e-17 noise to 3e-9.
    const double scale = eig.eigenvalues.size() > 0 ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    const double floor = static_cast<double>(rho.rows()) * std::numeric_limits<double>::epsilon() * scale;
    const RealVector roots =
        eig.eigenvalues.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    const ComplexMatrix& v = eig.eigenvectors;
    ComplexMatrix s = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
    // Exact Hermiticity of the stored root.
    return 0.5 * (s + s.adjoint());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "left operand");
    require_square(b, "right operand");
    if (a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "commutator of " + std::to_string(a.rows()) +
                                                      "- and " + std::to_string(b.rows()) +
                                                      "-dimensional operators");
    }
    return a * b - b * a;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "Hilbert-Schmidt inner product shape mismatch");
    }
    // Column-major data, same traversal for both operands.
    Complex acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) acc += std::conj(a.data()[i]) * b.data()[i];
    return acc;
}

double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (double v : values) s.add(v);
    return s.value();
}

}  // namespace skewinfo
