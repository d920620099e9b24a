#pragma once

#include <array>

#include "rcf/invariants.hpp"
#include "rcf/metric.hpp"
#include "rcf/tensors.hpp"
#include "rcf/types.hpp"

namespace rcf {

/// One application of the rank-one lemma H = Q + sign * C C^T, with the
/// ingredients the update formula needs: Q's inverse and determinant, the
/// update vector, its raise C_up = Q_inv C, and C2 = C_up . C.
struct Rank1Step {
  CMatrix Q_inv;
  Complex detQ;
  CVector C_lower;
  CVector C_upper;
  Complex C2;
  int sign = +1;
};

Rank1Step make_rank1_step(CMatrix Q_inv, Complex detQ, CVector C_lower, int sign);

struct Rank1Result {
  CMatrix H_inv;
  Complex detH;
};

/// det H = (1 + sign C2) det Q and
/// H_inv = Q_inv - sign/(1 + sign C2) C_up C_up^T.
/// Throws UpdateSingular when |1 + sign C2| <= 1e-12.
Rank1Result rank1_update(const Rank1Step& s);

/// Inverse and determinant of g through three rank-one updates of a_ij,
/// for the non-Hermitian case a_ij-bar = 0. tau is the step-2 factor
/// 1 + sign C2; omega_coeff/gamma_coeff expand the step-3 raised vector
/// (per unit sqrt|sigma3|) in the basis {eta, b_up}.
struct PipelineResult {
  CMatrix g_inv;
  Complex det_g;
  std::array<Rank1Step, 3> per_step;
  Complex tau;
  Complex omega_coeff;
  Complex gamma_coeff;
};

/// Throws NotNonHermitian, SingularBaseMetric, SigmaUndefined (only derived
/// sigma is accepted), Step1/2/3Singular.
PipelineResult invert_pipeline(const GroundValues& gv, const Invariants& inv,
                               const SigmaInvariants& sig,
                               const MetricTensors& t);

/// det(g) four ways, plus the published closed-form step-3 factors and the
/// trailing determinant line evaluated against both candidate families.
struct DeterminantAudit {
  Complex det_lu;
  Complex det_pipeline;
  Complex det_theorem_text;  // middle bracket [1 + omega + ...], no sigma2
  Complex det_proof_step;    // middle bracket [1 + sigma2 (omega + ...)]
  Real rel_pipeline_vs_lu = 0;
  Real rel_theorem_vs_lu = 0;
  Real rel_proof_vs_lu = 0;
  bool indistinguishable = false;  // omega + sigma1 eps^2/(1-sigma1 gamma) = 0

  Complex factor_numeric;  // step-3 determinant factor from the pipeline
  Complex factor_theorem;  // 1 + (Omega gamma + Gamma eps) sqrt(sigma3)
  Complex factor_proof;    // 1 + (P gamma + Q eps) sqrt(sigma3)
  Real rel_factor_theorem = 0;
  Real rel_factor_proof = 0;

  Real trailing_factor = 0;   // alpha^2 (alpha - 2 beta) / (alpha - beta)^3
  Real matsumoto_rho0 = 0;
  Real infseries_rho0 = 0;
  Real rel_trailing_vs_matsumoto = 0;
  Real rel_trailing_vs_infseries = 0;
};

DeterminantAudit determinant_audit(const GroundValues& gv, const Invariants& inv,
                                   const SigmaInvariants& sig,
                                   const MetricTensors& t);

/// The published closed forms for the step-3 expansion coefficients, kept
/// verbatim for auditing only.
struct Step3ClosedForms {
  Complex omega_theorem;
  Complex gamma_theorem;
  Complex p_proof;
  Complex q_proof;
};

Step3ClosedForms step3_closed_forms(const SigmaInvariants& sig, Complex gamma,
                                    Complex epsilon, Complex omega);

}  // namespace rcf
