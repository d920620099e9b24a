#pragma once

#include "rcf/family.hpp"
#include "rcf/types.hpp"

namespace rcf {

/// The five scalar invariants that assemble the fundamental tensors:
/// rho0 = L_a/(2 alpha), rho1 = L_b/2, rho_m2 = (alpha L_aa - L_a)/(4 alpha^3),
/// rho_m1 = L_ab/(4 alpha), mu0 = L_bb/4.
struct Invariants {
  Real rho0 = 0, rho1 = 0, rho_m2 = 0, rho_m1 = 0, mu0 = 0;
};

enum class SigmaVariant { paper_literal, derived };

/// Coefficients of the rank-one form
///   g_ij = rho0 [a_ij - sigma1 l_i l_j + sigma2 b_i b_j + sigma3 eta_i eta_j].
/// The derived variant is fixed by matching coefficients against the
/// rho-form; the literal variant is the published closed form, kept for
/// auditing.
struct SigmaInvariants {
  Real sigma1 = 0, sigma2 = 0, sigma3 = 0;
  SigmaVariant variant = SigmaVariant::derived;
};

/// Defining relations applied to any second-order jet. Requires alpha > 0.
Invariants rho_invariants(const Jet2& jet, Real alpha);

/// Derived sigma from any family's invariants:
///   sigma3 = rho_m1 / (rho0^2 rho1)
///   sigma1 = sigma3 rho0^2 - rho_m2 / rho0
///   sigma2 = mu0 / rho0 - sigma3 rho1^2.
/// Throws SigmaUndefined when rho1 or rho0 vanish (for the infinite series
/// that is beta = 2 alpha or beta = 0). For the infinite series the results
/// simplify to sigma1 = (beta-4alpha)/(2alpha^2(beta-2alpha)),
/// sigma2 = alpha^2/beta^2, and sigma3 equal to the literal variant.
SigmaInvariants sigma_derived(const Invariants& inv, Real alpha, Real beta);

/// The published infinite-series closed forms, evaluated verbatim.
SigmaInvariants sigma_literal(Real alpha, Real beta);

/// Infinite-series sigma by variant tag; the derived branch routes through
/// the closed-form jet at (alpha, beta).
SigmaInvariants sigma_invariants(Real alpha, Real beta, SigmaVariant variant);

}  // namespace rcf
