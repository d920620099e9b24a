#pragma once

#include <optional>

#include "rcf/family.hpp"
#include "rcf/invariants.hpp"
#include "rcf/metric.hpp"
#include "rcf/types.hpp"

namespace rcf {

/// The fundamental tensors at a point: complex-symmetric g_ij, the mixed
/// block g_ij-bar, its conjugate block, and the lowered fiber covector
/// eta_i = rho0 l_i + rho1 b_i.
struct MetricTensors {
  CMatrix g;
  CMatrix g_mixed;
  CMatrix g_barbar;  // conj(g), stored for the reconstruction identity
  CVector eta_lower;
};

/// Finite-difference counterpart of MetricTensors, from Wirtinger calculus
/// on the real fiber coordinates.
struct OracleTensors {
  CMatrix g;
  CMatrix g_mixed;
  CMatrix g_barbar;
  CVector eta_lower;
  Real stencil_step = 0;
  Real error_estimate = 0;  // max entrywise |step h - step h/2|
};

/// Normalized residuals of the structural identities at one point.
struct IdentityReport {
  Real eq24 = 0;          // 2L = g eta eta + conj + 2 g_mixed eta etabar
  Real eq22_lowering = 0; // (g eta)_j + (g_mixed etabar)_j = eta_lower_j
  Real prop34_gamma = 0;  // gamma + conj(gamma) = 2 alpha^2
  Real prop34_epsilon = 0;
  std::optional<Real> prop34_delta;  // delta = epsilon, when a_mixed = 0
};

/// Rank-one assembly of the tensors from the invariants:
///   g_ij     = rho0 a_ij + rho_m2 l_i l_j + mu0 b_i b_j
///              + rho_m1 (b_j l_i + b_i l_j)
///   g_ij-bar = rho0 a_ij-bar + rho_m2 l_i lbar_j + mu0 b_i bbar_j
///              + rho_m1 (bbar_j l_i + b_i lbar_j)
/// The mixed block carries rho_m2 on l_i lbar_j, the coefficient obtained
/// by differentiating eta_i; the published variant of that coefficient is
/// evaluated only by the audit.
MetricTensors assemble_tensors(const GroundValues& gv, const Invariants& inv);

/// Same tensors through the sigma form
///   g = rho0 [a - sigma1 l l + sigma2 b b + sigma3 eta_low eta_low].
MetricTensors assemble_tensors_sigma(const GroundValues& gv,
                                     const Invariants& inv,
                                     const SigmaInvariants& sig);

/// Wirtinger finite-difference Hessian of L(z, eta) in the fiber variable,
/// step h = 1e-4 max(1, |eta|) with step-halving error estimate. Throws
/// TooCloseToSingularLocus, UnstableStencil.
OracleTensors oracle_hessians(const MetricData& m, const EvaluationPoint& p,
                              const FamilyKind& kind);

/// Residuals of the reconstruction and lowering identities, normalized by
/// max(1, |2L|).
IdentityReport identity_suite(const MetricTensors& t, const GroundValues& gv,
                              Real L);

}  // namespace rcf
