#include "rcf/invariants.hpp"

#include <cmath>

#include "rcf/errors.hpp"

namespace rcf {

Invariants rho_invariants(const Jet2& jet, Real alpha) {
  if (!(alpha > 0))
    throw Error(Errc::DegenerateAlpha, "rho invariants need alpha > 0");
  Invariants v;
  v.rho0 = jet.L_alpha / (2 * alpha);
  v.rho1 = jet.L_beta / 2;
  v.rho_m2 = (alpha * jet.L_alphaalpha - jet.L_alpha) / (4 * alpha * alpha * alpha);
  v.rho_m1 = jet.L_alphabeta / (4 * alpha);
  v.mu0 = jet.L_betabeta / 4;
  return v;
}

SigmaInvariants sigma_derived(const Invariants& inv, Real alpha, Real beta) {
  const Real scale = std::max({Real(1), alpha, std::abs(beta)});
  // rho1 = 0 (beta = 2 alpha or beta = 0 for the infinite series) makes
  // sigma3 undefined; rho0 = 0 kills the whole rank-one form.
  if (std::abs(beta - 2 * alpha) <= 1e-9 * scale || std::abs(beta) <= 1e-9 * scale)
    throw Error(Errc::SigmaUndefined,
                "derived sigma needs beta away from 2*alpha and 0");
  if (std::abs(inv.rho1) <= 1e-300 || std::abs(inv.rho0) <= 1e-300)
    throw Error(Errc::SigmaUndefined, "rho0 or rho1 vanishes at this point");

  SigmaInvariants s;
  s.variant = SigmaVariant::derived;
  s.sigma3 = inv.rho_m1 / (inv.rho0 * inv.rho0 * inv.rho1);
  s.sigma1 = s.sigma3 * inv.rho0 * inv.rho0 - inv.rho_m2 / inv.rho0;
  s.sigma2 = inv.mu0 / inv.rho0 - s.sigma3 * inv.rho1 * inv.rho1;
  return s;
}

SigmaInvariants sigma_literal(Real alpha, Real beta) {
  const Real d = beta - alpha;
  if (std::abs(d) <= 1e-9 * std::max({Real(1), alpha, std::abs(beta)}))
    throw Error(Errc::PoleAtAlphaEqualsBeta, "alpha = beta pole");
  const Real d5 = d * d * d * d * d;
  const Real a2 = alpha * alpha;
  const Real b2 = beta * beta;
  const Real b8 = b2 * b2 * b2 * b2;

  SigmaInvariants s;
  s.variant = SigmaVariant::paper_literal;
  s.sigma1 = d5 * (beta - 4 * alpha) / (2 * a2 * (beta - 2 * alpha));
  s.sigma2 = -a2 * alpha / (b2 * d);
  s.sigma3 = alpha * d5 * (beta - 4 * alpha) / (2 * b8 * (beta - 2 * alpha));
  return s;
}

SigmaInvariants sigma_invariants(Real alpha, Real beta, SigmaVariant variant) {
  if (variant == SigmaVariant::paper_literal) return sigma_literal(alpha, beta);
  Jet2 jet = jet_infinite_series(alpha, beta);
  return sigma_derived(rho_invariants(jet, alpha), alpha, beta);
}

}  // namespace rcf
