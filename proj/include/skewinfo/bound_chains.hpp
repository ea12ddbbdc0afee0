#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skewinfo/matrix_core.hpp"
#include "skewinfo/quantum_objects.hpp"
#include "skewinfo/skew_info.hpp"

namespace skewinfo {

// ---------------------------------------------------------------------------
// Inputs shared by every chain computation

/// Column statistics of one (E_i, F_j) frame pair: ‖e_k‖², ‖f_k‖² and ⟨e_k|f_k⟩
/// for every basis index k. All bounds are functions of these 3d numbers.
struct PairColumns {
    std::vector<double> e_norm_sq;
    std::vector<double> f_norm_sq;
    std::vector<Complex> overlap;
};

PairColumns pair_columns(const CommutatorFrame& e, const CommutatorFrame& f);

/// Frames of both channels plus the pair statistics in (i-major, j-minor) order.
struct ChainInput {
    Eigen::Index dim = 0;
    std::vector<CommutatorFrame> e_frames;
    std::vector<CommutatorFrame> f_frames;
    std::vector<PairColumns> pairs;
};

ChainInput prepare_chain_input(const DensityMatrix& rho, const KrausChannel& n1,
                               const KrausChannel& n2, const FrameBasis& basis = {});

/// Head/tail split of the stacked commutator columns at m (1 ≤ m ≤ d),
/// computed from scratch.
struct PartialSplit {
    int m = 0;
    double head_norm_sq = 0.0;
    double tail_norm_sq = 0.0;
    Complex head_overlap{};
};

PartialSplit partial_split(const CommutatorFrame& e, const CommutatorFrame& f, int m);

// ---------------------------------------------------------------------------
// Readings of the pairwise resolution recursion

/// How each step S_{p,q} ← S_{prev} + Δ is evaluated. With g_k = ⟨e_k|f_k⟩:
///   AsPrinted:      Δ = −(‖e_p‖² + ‖f_q‖²) + |g_p + g_q|²
///   ProductReading: Δ = ¼(−‖e_p‖²‖f_q‖² + |g_p + g_q|²)
///   Lagrange:       Δ = −¼(‖e_p‖²‖f_q‖² + ‖e_q‖²‖f_p‖² + |g_p|² + |g_q|² − |g_p + g_q|²)
///                       − ¼D_p   when q = p − 1
///                       − ¼D_q   additionally at (2,1)
///                   with D_k = ‖e_k‖²‖f_k‖² − |g_k|². Each Lagrange step removes
///                   one pairwise Cauchy–Schwarz gap, so S_{p,p−1} = I_p exactly.
enum class SReading { AsPrinted, ProductReading, Lagrange };

inline constexpr std::array<SReading, 3> kAllReadings{SReading::AsPrinted,
                                                      SReading::ProductReading,
                                                      SReading::Lagrange};

/// "as-printed", "product", "lagrange".
std::string_view to_string(SReading r);
SReading s_reading_from_string(std::string_view name);

/// 1-based lattice coordinate, 1 ≤ q < p ≤ d.
struct LatticeIndex {
    int p = 0;
    int q = 0;
    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// (2,1), (3,1), (3,2), (4,1), ..., (d,d−1).
std::vector<LatticeIndex> lattice_order(Eigen::Index d);

struct LatticeValue {
    LatticeIndex index;
    double value = 0.0;
};

// ---------------------------------------------------------------------------
// Chains

struct BoundChain {
    double skew1 = 0.0;  // I(ρ, N₁)
    double skew2 = 0.0;  // I(ρ, N₂)
    double product = 0.0;
    double sum = 0.0;
    std::vector<double> i_values;      // I_1 .. I_d
    std::vector<LatticeValue> s_values;  // lattice order
    double lemma1 = 0.0;
    SReading s_reading = SReading::Lagrange;

    /// S_{p,q}; S_{1,0} is the product. Throws InvalidIndices otherwise.
    double s_value(int p, int q) const;
};

/// ¼ Σ_ij |Tr([√ρ,E_i]†[√ρ,F_j])|².
double lemma1_bound(const ChainInput& in);
double lemma1_bound(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2);

/// I_1 .. I_d, accumulated incrementally over the head/tail split.
std::vector<double> i_chain(const ChainInput& in);
std::vector<double> i_chain(const DensityMatrix& rho, const KrausChannel& n1,
                            const KrausChannel& n2);

/// Every lattice entry in traversal order under one reading.
std::vector<LatticeValue> s_chain(const ChainInput& in, SReading reading);
std::vector<LatticeValue> s_chain(const DensityMatrix& rho, const KrausChannel& n1,
                                  const KrausChannel& n2, SReading reading);

/// Everything at once.
BoundChain bound_chain(const ChainInput& in, SReading reading = SReading::Lagrange);
BoundChain bound_chain(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2,
                       SReading reading = SReading::Lagrange, const FrameBasis& basis = {});

/// 2√I_m for every m, then 2√S_{p,q} in lattice order (negative values clamp to 0).
std::vector<double> sum_chain(const BoundChain& chain);

// ---------------------------------------------------------------------------
// Permutation action

/// Zero-based images: perm[r] is the image of index r.
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t d);
bool is_permutation(const Permutation& perm, std::size_t d);

/// (σ,τ)S_{p,q}: the recursion with every p-side index r read as σ(r) and
/// every q-side index as τ(r). (id, id) reproduces s_chain bit-for-bit.
double permute_s(const ChainInput& in, const Permutation& sigma, const Permutation& tau, int p,
                 int q, SReading reading = SReading::Lagrange);
double permute_s(const DensityMatrix& rho, const KrausChannel& n1, const KrausChannel& n2,
                 const Permutation& sigma, const Permutation& tau, int p, int q,
                 SReading reading = SReading::Lagrange);

enum class PermutationStrategy { Exhaustive, Sampled };

/// Default permutation budget: (5!)², so Exhaustive covers d ≤ 5.
inline constexpr std::size_t kDefaultPermutationBudget = 14400;
inline constexpr std::size_t kDefaultSampleBudget = 10000;

struct PermutedBound {
    Permutation sigma;
    Permutation tau;
    int p = 0;
    int q = 0;
    double value = 0.0;
    double t = 1.0;
    double mixed_value = 0.0;
    std::size_t evaluated = 0;
};

/// Exhaustive: all (d!)² pairs, σ-major lexicographic, first maximum wins
/// (BudgetExceeded if (d!)² > budget). Sampled: identity pair, then `budget`
/// seeded random pairs, then steepest-ascent over adjacent transpositions.
PermutedBound optimize_permutations(const ChainInput& in, int p, int q,
                                    PermutationStrategy strategy, std::size_t budget,
                                    RandomSeed seed, SReading reading = SReading::Lagrange);

/// Exhaustive when (d!)² ≤ kDefaultPermutationBudget, else Sampled with
/// kDefaultSampleBudget draws.
PermutationStrategy default_strategy(Eigen::Index d);

struct MixedBound {
    double product_bound = 0.0;
    double sum_bound = 0.0;
};

/// product: (1−t)·S_{1,0} + t·best; sum: (1−t)·(I₁+I₂) + t·2√best.
MixedBound mixed_bound(const BoundChain& chain, const PermutedBound& best, double t);

/// best with t and mixed_value filled in.
PermutedBound with_mixing(const BoundChain& chain, PermutedBound best, double t);

// ---------------------------------------------------------------------------
// Verification

enum class CheckKind { Inequality, Equality };

struct ChainCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    CheckKind kind = CheckKind::Inequality;
    bool hard = true;  // soft checks are reported but never fail a run
    bool passed = true;
    double deviation = 0.0;  // rhs − lhs for inequalities, |lhs − rhs| for equalities
};

struct ChainVerdict {
    std::vector<ChainCheck> checks;
    double tol = 0.0;

    /// Appends and evaluates a check: lhs ≥ rhs − tol, or |lhs − rhs| ≤ tol.
    void add(std::string name, double lhs, double rhs, CheckKind kind, bool hard);
    bool hard_passed() const;
    std::size_t hard_failures() const;
    const ChainCheck* find(std::string_view name) const;
};

struct VerifyOptions {
    double tol = 1e-10;
    FrameBasis basis;
    std::vector<double> t_values{0.0, 0.25, 0.5, 0.75, 1.0};
    RandomSeed seed{0};
};

/// Named checks:
///   lemma1.*        product ≥ lemma1
///   ichain.*        product ≥ I_1, I_m ≥ I_{m+1}, I_d = lemma1 (and soft I_1 = product)
///   schain.<r>.*    monotonicity and anchors S_{p,p−1} = I_p, S_{d,d−1} = lemma1
///                   per reading; hard only for the Lagrange reading
///   sum.*           I₁+I₂ ≥ 2√product ≥ 2√I_m, and ≥ 2√S_{p,q}
///   perm.* mixed.*  optimized/mixed bounds between lemma1 and product
ChainVerdict verify_chain(const DensityMatrix& rho, const KrausChannel& n1,
                          const KrausChannel& n2, const VerifyOptions& options = {});

struct InvarianceReport {
    std::size_t trials = 0;
    double tol = 0.0;
    double max_dev_product = 0.0;
    double max_dev_sum = 0.0;
    double max_dev_i = 0.0;
    double max_dev_s = 0.0;  // over all readings
    double max_dev_lemma1 = 0.0;
    double max_deviation() const;
    bool passed() const { return max_deviation() <= tol; }
};

/// Each trial mixes N₁ by a Haar U (n₁×n₁) and N₂ by a Haar V (n₂×n₂) and
/// compares every bound with the unmixed values.
InvarianceReport kraus_invariance_check(const DensityMatrix& rho, const KrausChannel& n1,
                                        const KrausChannel& n2, std::size_t trials,
                                        RandomSeed seed, double tol);

/// Single comparison with caller-supplied mixing unitaries.
InvarianceReport kraus_invariance_check(const DensityMatrix& rho, const KrausChannel& n1,
                                        const KrausChannel& n2, const ComplexMatrix& u,
                                        const ComplexMatrix& v, double tol);

}  // namespace skewinfo
