#include "rcf/linalg.hpp"

#include <Eigen/LU>

#include "rcf/errors.hpp"

namespace rcf {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SingularMatrix:
      return "SingularMatrix";
    case Errc::DimensionMismatch:
      return "DimensionMismatch";
    case Errc::SyntaxError:
      return "SyntaxError";
    case Errc::IndexOutOfRange:
      return "IndexOutOfRange";
    case Errc::DivisionNearZero:
      return "DivisionNearZero";
    case Errc::DegenerateAlpha:
      return "DegenerateAlpha";
    case Errc::ZeroSection:
      return "ZeroSection";
    case Errc::SingularBaseMetric:
      return "SingularBaseMetric";
    case Errc::PoleAtAlphaEqualsBeta:
      return "PoleAtAlphaEqualsBeta";
    case Errc::TooCloseToSingularLocus:
      return "TooCloseToSingularLocus";
    case Errc::UnstableStencil:
      return "UnstableStencil";
    case Errc::SigmaUndefined:
      return "SigmaUndefined";
    case Errc::UpdateSingular:
      return "UpdateSingular";
    case Errc::NotNonHermitian:
      return "NotNonHermitian";
    case Errc::Step1Singular:
      return "Step1Singular";
    case Errc::Step2Singular:
      return "Step2Singular";
    case Errc::Step3Singular:
      return "Step3Singular";
    case Errc::NoValidPoints:
      return "NoValidPoints";
    case Errc::InvalidMetricFile:
      return "InvalidMetricFile";
    case Errc::InvalidConfig:
      return "InvalidConfig";
  }
  return "UnknownError";
}

Real inf_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

Real inverse_residual(const CMatrix& a, const CMatrix& a_inv) {
  CMatrix r = a * a_inv - CMatrix::Identity(a.rows(), a.cols());
  return inf_norm(r);
}

LUResult lu_invert(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw Error(Errc::DimensionMismatch, "lu_invert needs a square matrix, n >= 1");

  const Real norm_a = inf_norm(a);
  Eigen::PartialPivLU<CMatrix> lu(a);

  // Pivots are the diagonal of U; a vanishing one means rank deficiency
  // at working precision.
  const Real pivot_floor = 1e-14 * norm_a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (std::abs(lu.matrixLU()(i, i)) <= pivot_floor)
      throw Error(Errc::SingularMatrix,
                  "pivot " + std::to_string(i) + " below 1e-14*|A|");
  }

  LUResult out;
  out.determinant = lu.determinant();
  out.inverse = lu.inverse();
  out.condition_estimate = norm_a * inf_norm(out.inverse);
  return out;
}

Complex contract(const CVector& v, const CVector& w) {
  if (v.size() != w.size())
    throw Error(Errc::DimensionMismatch, "contract needs equal lengths");
  // Eigen's dot() conjugates; this pairing must not.
  return (v.array() * w.array()).sum();
}

CMatrix symmetrized(const CMatrix& r) { return (r + r.transpose()) / 2.0; }

CMatrix hermitianized(const CMatrix& r) { return (r + r.adjoint()) / 2.0; }

bool is_symmetric(const CMatrix& a, Real tol) {
  return inf_norm(a - CMatrix(a.transpose())) <= tol;
}

}  // namespace rcf
