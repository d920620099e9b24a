#pragma once

#include <Eigen/Dense>
#include <complex>

namespace rcf {

using Real = double;
using Complex = std::complex<Real>;

/// Dense complex column vector; houses fiber coordinates and covectors.
using CVector = Eigen::VectorXcd;

/// Dense complex matrix. Symmetric means transpose symmetry (a_ij = a_ji),
/// never conjugate-transpose: the fiber Hessian of a real 2-homogeneous
/// function is complex symmetric, not Hermitian.
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// max(1, |ref|)-floored relative error, the normalization used by every
/// residual and tolerance in this library.
inline Real rel_err(Real value, Real ref) {
  return std::abs(value - ref) / std::max(Real(1), std::abs(ref));
}

inline Real rel_err(const Complex& value, const Complex& ref) {
  return std::abs(value - ref) / std::max(Real(1), std::abs(ref));
}

}  // namespace rcf
