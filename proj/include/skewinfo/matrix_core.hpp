#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace skewinfo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Uniform tolerance used by all PSD / Hermiticity checks unless overridden.
inline constexpr double kDefaultTol = 1e-9;

struct HermitianEig {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // columns are orthonormal eigenvectors
};

/// Largest |entry| of M; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

/// ‖M − M†‖_max. Requires M square.
double hermitian_asymmetry(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
///
/// Only the lower triangle of the symmetrised input (M + M†)/2 is used, so the
/// result is a deterministic function of the input bits. Throws NotSquare,
/// NotHermitian (magnitude = max asymmetry) or ConvergenceFailure.
HermitianEig hermitian_eigendecompose(const ComplexMatrix& m,
                                      double hermiticity_tol = kDefaultTol);

/// Principal square root of a PSD matrix. Eigenvalues in [−tol, 0) are
/// clamped to zero; anything below −tol raises NotPSD with that eigenvalue.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho, double tol = kDefaultTol);

/// AB − BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert–Schmidt inner product Tr(A†B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Neumaier-compensated accumulator. Summation order is the call order, so
/// results are reproducible bit-for-bit for a fixed loop order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

}  // namespace skewinfo
