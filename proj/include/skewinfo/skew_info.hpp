#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skewinfo/matrix_core.hpp"
#include "skewinfo/quantum_objects.hpp"

namespace skewinfo {

/// Orthonormal basis {|k⟩} in which commutator columns are read off. The
/// default is the computational basis; a custom basis is given as a unitary
/// whose k-th column is |k⟩. Every bound downstream depends on this choice.
struct FrameBasis {
    std::optional<ComplexMatrix> unitary;

    static FrameBasis computational() { return {}; }
};

/// The commutator [√ρ, K] and its basis columns |ρ^K_k⟩ = [√ρ, K]|k⟩.
struct CommutatorFrame {
    std::size_t source_operator_index = 0;
    ComplexMatrix matrix;
    std::vector<ComplexVector> columns;

    /// Σ_k ‖columns[k]‖², i.e. 2·I(ρ, K).
    double norm_sq() const;
};

CommutatorFrame commutator_frame(const DensityMatrix& rho, const ComplexMatrix& k,
                                 const FrameBasis& basis = {}, std::size_t source_index = 0);

/// One frame per Kraus operator, in channel order.
std::vector<CommutatorFrame> channel_frames(const DensityMatrix& rho, const KrausChannel& channel,
                                            const FrameBasis& basis = {});

/// I(ρ, K) = ½ Tr([√ρ,K]†[√ρ,K]); valid for non-Hermitian K.
double skew_info_operator(const DensityMatrix& rho, const ComplexMatrix& k);

/// I(ρ, N) = Σ_i I(ρ, K_i), summed with compensation in operator order.
double skew_info_channel(const DensityMatrix& rho, const KrausChannel& channel);

/// −½ Tr([√ρ, A]²) for Hermitian A (NotHermitian otherwise, tolerance 1e-10).
double skew_info_observable(const DensityMatrix& rho, const ComplexMatrix& a);

/// ¼ |Tr(ρ[A, B])|², the right-hand side of the observable product relation.
double luo_observable_bound(const DensityMatrix& rho, const ComplexMatrix& a,
                            const ComplexMatrix& b);

}  // namespace skewinfo
