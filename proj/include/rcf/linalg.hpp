#pragma once

#include "rcf/types.hpp"

namespace rcf {

/// Determinant, inverse and a condition estimate from one LU factorization.
struct LUResult {
  Complex determinant;
  CMatrix inverse;
  Real condition_estimate = 0.0;  // ‖A‖∞ · ‖A⁻¹‖∞
};

/// Row-sum (infinity) norm.
Real inf_norm(const CMatrix& a);

/// ‖A·B − I‖∞, the inverse-quality residual used throughout the tests.
Real inverse_residual(const CMatrix& a, const CMatrix& a_inv);

/// LU with partial pivoting. Throws SingularMatrix when a pivot modulus
/// falls at or below 1e-14·‖A‖∞.
LUResult lu_invert(const CMatrix& a);

/// Unconjugated bilinear pairing Σᵢ vᵢwᵢ. Conjugation, where a formula
/// needs it, is applied explicitly by the caller.
Complex contract(const CVector& v, const CVector& w);

/// (R + Rᵀ)/2, exact for already-symmetric input.
CMatrix symmetrized(const CMatrix& r);

/// (R + Rᴴ)/2.
CMatrix hermitianized(const CMatrix& r);

bool is_symmetric(const CMatrix& a, Real tol = 0.0);

}  // namespace rcf
