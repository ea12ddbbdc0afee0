#include "skewinfo/skew_info.hpp"

#include <algorithm>
#include <string>

#include "skewinfo/error.hpp"

namespace skewinfo {

namespace {

constexpr double kObservableHermiticityTol = 1e-10;

void require_same_dim(const DensityMatrix& rho, const ComplexMatrix& k) {
    if (k.rows() != rho.dim() || k.cols() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                        ", state has dimension " + std::to_string(rho.dim()));
    }
}

void require_hermitian(const ComplexMatrix& a, const char* name) {
    const double asym = hermitian_asymmetry(a);
    if (asym > kObservableHermiticityTol) {
        throw Error(ErrorKind::NotHermitian,
                    std::string(name) + " asymmetry " + std::to_string(asym), asym);
    }
}

}  // namespace

double CommutatorFrame::norm_sq() const {
    CompensatedSum s;
    for (const auto& c : columns) s.add(c.squaredNorm());
    return s.value();
}

CommutatorFrame commutator_frame(const DensityMatrix& rho, const ComplexMatrix& k,
                                 const FrameBasis& basis, std::size_t source_index) {
    require_same_dim(rho, k);
    CommutatorFrame frame;
    frame.source_operator_index = source_index;
    frame.matrix = commutator(rho.sqrt_rho(), k);

    const Eigen::Index d = rho.dim();
    frame.columns.reserve(static_cast<std::size_t>(d));
    if (basis.unitary) {
        if (basis.unitary->rows() != d || basis.unitary->cols() != d)
            throw Error(ErrorKind::DimensionMismatch, "frame basis has the wrong dimension");
        const ComplexMatrix rotated = frame.matrix * *basis.unitary;
        for (Eigen::Index c = 0; c < d; ++c) frame.columns.emplace_back(rotated.col(c));
    } else {
        for (Eigen::Index c = 0; c < d; ++c) frame.columns.emplace_back(frame.matrix.col(c));
    }
    return frame;
}

std::vector<CommutatorFrame> channel_frames(const DensityMatrix& rho, const KrausChannel& channel,
                                            const FrameBasis& basis) {
    std::vector<CommutatorFrame> frames;
    frames.reserve(channel.size());
    for (std::size_t i = 0; i < channel.size(); ++i)
        frames.push_back(commutator_frame(rho, channel[i], basis, i));
    return frames;
}

double skew_info_operator(const DensityMatrix& rho, const ComplexMatrix& k) {
    require_same_dim(rho, k);
    const ComplexMatrix c = commutator(rho.sqrt_rho(), k);
    return std::max(0.0, 0.5 * hs_inner(c, c).real());
}

double skew_info_channel(const DensityMatrix& rho, const KrausChannel& channel) {
    if (channel.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "channel and state dimensions differ");
    CompensatedSum total;
    for (const auto& k : channel.operators()) total.add(skew_info_operator(rho, k));
    return total.value();
}

double skew_info_observable(const DensityMatrix& rho, const ComplexMatrix& a) {
    require_same_dim(rho, a);
    require_hermitian(a, "observable");
    const ComplexMatrix c = commutator(rho.sqrt_rho(), a);
    return std::max(0.0, -0.5 * (c * c).trace().real());
}

double luo_observable_bound(const DensityMatrix& rho, const ComplexMatrix& a,
                            const ComplexMatrix& b) {
    require_same_dim(rho, a);
    require_same_dim(rho, b);
    require_hermitian(a, "first observable");
    require_hermitian(b, "second observable");
    const Complex expectation = (rho.rho() * commutator(a, b)).trace();
    return 0.25 * std::norm(expectation);
}

}  // namespace skewinfo
