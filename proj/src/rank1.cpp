#include "rcf/rank1.hpp"

#include <cmath>

#include "rcf/errors.hpp"
#include "rcf/linalg.hpp"

namespace rcf {

Rank1Step make_rank1_step(CMatrix Q_inv, Complex detQ, CVector C_lower, int sign) {
  Rank1Step s;
  s.Q_inv = std::move(Q_inv);
  s.detQ = detQ;
  s.C_upper = s.Q_inv * C_lower;
  s.C_lower = std::move(C_lower);
  s.C2 = contract(s.C_upper, s.C_lower);
  s.sign = sign;
  return s;
}

Rank1Result rank1_update(const Rank1Step& s) {
  const Complex factor = Complex(1.0) + Real(s.sign) * s.C2;
  if (std::abs(factor) <= 1e-12)
    throw Error(Errc::UpdateSingular, "1 + sign*C2 vanishes");
  Rank1Result r;
  r.detH = factor * s.detQ;
  r.H_inv = s.Q_inv -
            (Real(s.sign) / factor) * (s.C_upper * s.C_upper.transpose());
  return r;
}

namespace {

int sign_of(Real x) { return x < 0 ? -1 : +1; }

// Update vector for a term  coeff * v v^T  added to Q: the lemma works with
// C = sqrt(|coeff|) v and the sign of coeff, never a complex square root.
CVector scaled_vector(Real coeff, const CVector& v) {
  return std::sqrt(std::abs(coeff)) * v;
}

struct PipelineScalars {
  ContractionScalars s;
  LUResult a_lu;
};

PipelineScalars pipeline_scalars(const GroundValues& gv) {
  if (inf_norm(gv.a_mixed) > 1e-12 * std::max(Real(1), inf_norm(gv.a)))
    throw Error(Errc::NotNonHermitian, "pipeline needs a_ij-bar = 0");
  PipelineScalars ps;
  try {
    ps.a_lu = lu_invert(gv.a);
  } catch (const Error& e) {
    if (e.code() == Errc::SingularMatrix)
      throw Error(Errc::SingularBaseMetric, "a_ij is singular");
    throw;
  }
  ps.s = contraction_scalars(gv);
  return ps;
}

}  // namespace

PipelineResult invert_pipeline(const GroundValues& gv, const Invariants& inv,
                               const SigmaInvariants& sig,
                               const MetricTensors& t) {
  if (sig.variant != SigmaVariant::derived)
    throw Error(Errc::SigmaUndefined, "pipeline requires the derived sigma variant");
  if (!(std::isfinite(sig.sigma1) && std::isfinite(sig.sigma2) &&
        std::isfinite(sig.sigma3)))
    throw Error(Errc::SigmaUndefined, "non-finite sigma invariants");
  if (std::abs(inv.rho0) <= 1e-300)
    throw Error(Errc::SigmaUndefined, "rho0 vanishes; g has no rank-one form");

  PipelineScalars ps = pipeline_scalars(gv);
  const int n = static_cast<int>(gv.a.rows());

  PipelineResult out;

  // Step 1: Q = a, update -sigma1 l l^T.
  out.per_step[0] = make_rank1_step(ps.a_lu.inverse, ps.a_lu.determinant,
                                    scaled_vector(sig.sigma1, gv.l),
                                    -sign_of(sig.sigma1));
  Rank1Result h1;
  try {
    h1 = rank1_update(out.per_step[0]);
  } catch (const Error&) {
    throw step_singular(1, "1 - sigma1*gamma vanishes");
  }

  // Step 2: update +sigma2 b b^T.
  out.per_step[1] = make_rank1_step(h1.H_inv, h1.detH,
                                    scaled_vector(sig.sigma2, gv.b),
                                    sign_of(sig.sigma2));
  Rank1Result h2;
  try {
    h2 = rank1_update(out.per_step[1]);
  } catch (const Error&) {
    throw step_singular(2, "tau vanishes");
  }
  out.tau = Complex(1.0) + Real(out.per_step[1].sign) * out.per_step[1].C2;

  // Step 3: update +sigma3 eta_low eta_low^T.
  out.per_step[2] = make_rank1_step(h2.H_inv, h2.detH,
                                    scaled_vector(sig.sigma3, t.eta_lower),
                                    sign_of(sig.sigma3));
  Rank1Result h3;
  try {
    h3 = rank1_update(out.per_step[2]);
  } catch (const Error&) {
    throw step_singular(3, "step-3 determinant factor vanishes");
  }

  out.g_inv = h3.H_inv / inv.rho0;
  out.det_g = std::pow(Complex(inv.rho0), n) * h3.detH;

  // Expansion of H2^{-1} eta_low in {eta_up, b_up}; exact because
  // a^{-1} eta_low = rho0 eta_up + rho1 b_up and the updates stay in span.
  const CVector raised = h2.H_inv * t.eta_lower;
  const CVector eta_up = ps.s.eta_up_check;
  if (n >= 2) {
    CMatrix basis(n, 2);
    basis.col(0) = eta_up;
    basis.col(1) = ps.s.b_up;
    Eigen::Matrix<Complex, 2, 1> coeff =
        basis.colPivHouseholderQr().solve(raised);
    out.omega_coeff = coeff(0);
    out.gamma_coeff = coeff(1);
  } else {
    out.omega_coeff = raised[0] / eta_up[0];
    out.gamma_coeff = Complex(0.0);
  }
  return out;
}

Step3ClosedForms step3_closed_forms(const SigmaInvariants& sig, Complex gamma,
                                    Complex epsilon, Complex omega) {
  const Complex s1 = sig.sigma1, s2 = sig.sigma2;
  const Complex one(1.0);
  const Complex d = one - s1 * gamma;
  const Complex tau = one + s2 * (omega + s1 * epsilon * epsilon / d);

  Step3ClosedForms cf;
  const Complex k1 = s1 / d - epsilon * epsilon * s1 * s1 * s2 / (tau * d * d);
  cf.omega_theorem = one + k1 * gamma - (s1 * s2 / (tau * d)) * epsilon * epsilon;
  cf.gamma_theorem = -(s2 / tau) * epsilon + (s1 * s2 * epsilon / (tau * d)) * gamma;
  cf.p_proof = (one + k1) * gamma - s1 * s2 * epsilon / (tau * d * d * d);
  cf.q_proof = -(s2 * epsilon) / tau - s1 * s2 * epsilon * gamma / (tau * d);
  return cf;
}

DeterminantAudit determinant_audit(const GroundValues& gv, const Invariants& inv,
                                   const SigmaInvariants& sig,
                                   const MetricTensors& t) {
  PipelineResult pipe = invert_pipeline(gv, inv, sig, t);
  PipelineScalars ps = pipeline_scalars(gv);
  const int n = static_cast<int>(gv.a.rows());

  const Complex gamma = ps.s.gamma;
  const Complex epsilon = ps.s.epsilon;
  const Complex omega = ps.s.omega;
  const Complex one(1.0);
  const Complex d = one - Complex(sig.sigma1) * gamma;
  const Complex x = omega + Complex(sig.sigma1) * epsilon * epsilon / d;

  DeterminantAudit out;
  out.det_lu = lu_invert(t.g).determinant;
  out.det_pipeline = pipe.det_g;

  const Complex rho0_n = std::pow(Complex(inv.rho0), n);
  const Complex factor3 =
      one + Real(pipe.per_step[2].sign) * pipe.per_step[2].C2;
  out.det_theorem_text = rho0_n * factor3 * (one + x) * d * ps.a_lu.determinant;
  out.det_proof_step =
      rho0_n * factor3 * (one + Complex(sig.sigma2) * x) * d * ps.a_lu.determinant;

  const Real lu_mag = std::abs(out.det_lu);
  auto rel = [&](const Complex& v) {
    return std::abs(v - out.det_lu) / std::max(Real(1), lu_mag);
  };
  out.rel_pipeline_vs_lu = rel(out.det_pipeline);
  out.rel_theorem_vs_lu = rel(out.det_theorem_text);
  out.rel_proof_vs_lu = rel(out.det_proof_step);
  out.indistinguishable = std::abs(x) <= 1e-9 * (1.0 + std::abs(omega));

  Step3ClosedForms cf = step3_closed_forms(sig, gamma, epsilon, omega);
  const Complex root_s3 = std::sqrt(Complex(sig.sigma3));
  out.factor_numeric = factor3;
  out.factor_theorem =
      one + (cf.omega_theorem * gamma + cf.gamma_theorem * epsilon) * root_s3;
  out.factor_proof = one + (cf.p_proof * gamma + cf.q_proof * epsilon) * root_s3;
  out.rel_factor_theorem = rel_err(out.factor_theorem, out.factor_numeric);
  out.rel_factor_proof = rel_err(out.factor_proof, out.factor_numeric);

  const Real alpha = gv.alpha, beta = gv.beta;
  const Real ab = alpha - beta;
  out.trailing_factor = alpha * alpha * (alpha - 2 * beta) / (ab * ab * ab);
  out.matsumoto_rho0 =
      rho_invariants(jet_analytic(FamilyKind::matsumoto(), alpha, beta), alpha).rho0;
  out.infseries_rho0 = inv.rho0;
  out.rel_trailing_vs_matsumoto = rel_err(out.trailing_factor, out.matsumoto_rho0);
  out.rel_trailing_vs_infseries = rel_err(out.trailing_factor, out.infseries_rho0);
  return out;
}

}  // namespace rcf
