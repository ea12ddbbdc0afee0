#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "skewinfo/matrix_core.hpp"

namespace skewinfo {

/// Which completeness relation a Kraus list is held to.
///   RowSum:    Σ K K† = I
///   ColumnSum: Σ K† K = I   (trace preservation)
enum class Convention { RowSum, ColumnSum };

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view name);  // "row_sum" / "column_sum"

struct RandomSeed {
    std::uint64_t seed = 0;
};

/// Seeded generator: std::mt19937_64 (fully specified by the C++ standard, so
/// the raw 64-bit stream is identical on every conforming platform) with
/// hand-rolled uniform/Gaussian transforms instead of the
/// implementation-defined <random> distributions.
class Rng {
public:
    explicit Rng(RandomSeed seed) : engine_(seed.seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), unbiased by rejection. n must be > 0.
    std::uint64_t below(std::uint64_t n);

    /// Standard real normal via Box–Muller (both outputs consumed in order).
    double normal();

    /// Standard complex Gaussian: E|z|² = 1.
    Complex complex_normal();

    /// rows×cols matrix of i.i.d. complex Gaussians, filled row-major.
    ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// A validated quantum state together with its cached principal square root.
class DensityMatrix {
public:
    Eigen::Index dim() const { return rho_.rows(); }
    const ComplexMatrix& rho() const { return rho_; }
    const ComplexMatrix& sqrt_rho() const { return sqrt_rho_; }
    double validation_tol() const { return tol_; }

private:
    friend DensityMatrix validate_density(const ComplexMatrix&, double);
    DensityMatrix(ComplexMatrix rho, ComplexMatrix sqrt_rho, double tol)
        : rho_(std::move(rho)), sqrt_rho_(std::move(sqrt_rho)), tol_(tol) {}

    ComplexMatrix rho_;
    ComplexMatrix sqrt_rho_;
    double tol_;
};

/// An ordered Kraus list checked against one completeness convention.
class KrausChannel {
public:
    Eigen::Index dim() const { return ops_.front().rows(); }
    std::size_t size() const { return ops_.size(); }
    const std::vector<ComplexMatrix>& operators() const { return ops_; }
    const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }
    Convention convention() const { return convention_; }
    double completeness_tol() const { return tol_; }

private:
    friend KrausChannel validate_channel(std::vector<ComplexMatrix>, Convention, double);
    KrausChannel(std::vector<ComplexMatrix> ops, Convention c, double tol)
        : ops_(std::move(ops)), convention_(c), tol_(tol) {}

    std::vector<ComplexMatrix> ops_;
    Convention convention_;
    double tol_;
};

/// Throws NotSquare, NotHermitian, NotPSD or TraceNotOne; the error magnitude
/// is the offending quantity (asymmetry, eigenvalue, |Tr − 1|).
DensityMatrix validate_density(const ComplexMatrix& m, double tol = kDefaultTol);

/// ‖Σ K K† − I‖_max or ‖Σ K† K − I‖_max depending on the convention.
double completeness_residual(const std::vector<ComplexMatrix>& ops, Convention c);

/// Throws DimensionMismatch, InvalidCount (empty or more than d² operators)
/// or CompletenessViolated (magnitude = residual).
KrausChannel validate_channel(std::vector<ComplexMatrix> ops, Convention convention,
                              double tol = kDefaultTol);

/// Σ K ρ K†.
ComplexMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// ρ = GG†/Tr(GG†) with G a d×rank complex Gaussian matrix.
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, RandomSeed seed);
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, Rng& rng);

/// Haar unitary: QR of a Gaussian matrix, R's diagonal made real positive.
ComplexMatrix random_unitary(Eigen::Index n, RandomSeed seed);
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

/// Haar isometry V ((n·d)×d) sliced into n blocks of d×d. ColumnSum uses the
/// blocks as-is (Σ K†K = V†V = I); RowSum uses their adjoints.
KrausChannel random_channel(Eigen::Index d, Eigen::Index n_kraus, Convention convention,
                            RandomSeed seed);
KrausChannel random_channel(Eigen::Index d, Eigen::Index n_kraus, Convention convention,
                            Rng& rng);

/// K'_t = Σ_s U_ts K_s. Same channel, different Kraus representation.
KrausChannel mix_kraus(const KrausChannel& channel, const ComplexMatrix& u);

}  // namespace skewinfo
