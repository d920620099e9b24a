#include "rcf/family.hpp"

#include <cmath>
#include <limits>

#include "rcf/errors.hpp"

namespace rcf {

FamilyKind FamilyKind::from_name(const std::string& name) {
  if (name == "infinite-series") return infinite_series();
  if (name == "randers") return randers();
  if (name == "kropina") return kropina();
  if (name == "matsumoto") return matsumoto();
  throw Error(Errc::InvalidConfig, "unknown family " + name);
}

const char* FamilyKind::name() const {
  switch (tag) {
    case Family::InfiniteSeries: return "infinite-series";
    case Family::Randers: return "randers";
    case Family::Kropina: return "kropina";
    case Family::Matsumoto: return "matsumoto";
    case Family::Custom: return "custom";
  }
  return "?";
}

Real FamilyKind::L(Real alpha, Real beta) const {
  switch (tag) {
    case Family::InfiniteSeries: {
      const Real d = beta - alpha;
      const Real b2 = beta * beta;
      return b2 * b2 / (d * d);
    }
    case Family::Randers: {
      const Real s = alpha + beta;
      return s * s;
    }
    case Family::Kropina: {
      const Real a2 = alpha * alpha;
      return a2 * a2 / (beta * beta);
    }
    case Family::Matsumoto: {
      const Real d = alpha - beta;
      const Real a2 = alpha * alpha;
      return a2 * a2 / (d * d);
    }
    case Family::Custom:
      return custom(alpha, beta);
  }
  return 0.0;
}

Real FamilyKind::pole_distance(Real alpha, Real beta) const {
  switch (tag) {
    case Family::InfiniteSeries:
    case Family::Matsumoto:
      return std::abs(beta - alpha);
    case Family::Kropina:
      return std::abs(beta);
    default:
      return std::numeric_limits<Real>::infinity();
  }
}

namespace {

Real scale_of(Real alpha, Real beta) {
  return std::max({Real(1), alpha, std::abs(beta)});
}

}  // namespace

Jet2 jet_infinite_series(Real alpha, Real beta) {
  const Real d = beta - alpha;
  if (std::abs(d) <= 1e-9 * scale_of(alpha, beta))
    throw Error(Errc::PoleAtAlphaEqualsBeta, "alpha = beta pole");
  const Real d2 = d * d, d3 = d2 * d, d4 = d2 * d2;
  const Real b2 = beta * beta, b3 = b2 * beta, b4 = b2 * b2;

  Jet2 j;
  j.L = b4 / d2;
  j.L_alpha = 2 * b4 / d3;
  j.L_beta = 2 * b3 * (beta - 2 * alpha) / d3;
  j.L_alphaalpha = 6 * b4 / d4;
  j.L_alphabeta = 2 * b3 * (beta - 4 * alpha) / d4;
  j.L_betabeta = 2 * b2 * (b2 - 4 * alpha * beta + 6 * alpha * alpha) / d4;
  return j;
}

Jet2 jet_analytic(const FamilyKind& kind, Real alpha, Real beta) {
  switch (kind.tag) {
    case Family::InfiniteSeries:
      return jet_infinite_series(alpha, beta);
    case Family::Randers: {
      Jet2 j;
      const Real s = alpha + beta;
      j.L = s * s;
      j.L_alpha = j.L_beta = 2 * s;
      j.L_alphaalpha = j.L_alphabeta = j.L_betabeta = 2;
      return j;
    }
    case Family::Kropina: {
      if (std::abs(beta) <= 1e-9 * scale_of(alpha, beta))
        throw Error(Errc::PoleAtAlphaEqualsBeta, "beta = 0 pole of Kropina");
      Jet2 j;
      const Real a2 = alpha * alpha, a3 = a2 * alpha, a4 = a2 * a2;
      const Real b2 = beta * beta, b3 = b2 * beta, b4 = b2 * b2;
      j.L = a4 / b2;
      j.L_alpha = 4 * a3 / b2;
      j.L_beta = -2 * a4 / b3;
      j.L_alphaalpha = 12 * a2 / b2;
      j.L_alphabeta = -8 * a3 / b3;
      j.L_betabeta = 6 * a4 / b4;
      return j;
    }
    case Family::Matsumoto: {
      // L_mat(alpha, beta) = L_inf(beta, alpha): swap the jet.
      Jet2 s = jet_infinite_series(beta, alpha);
      Jet2 j;
      j.L = s.L;
      j.L_alpha = s.L_beta;
      j.L_beta = s.L_alpha;
      j.L_alphaalpha = s.L_betabeta;
      j.L_alphabeta = s.L_alphabeta;
      j.L_betabeta = s.L_alphaalpha;
      return j;
    }
    case Family::Custom:
      throw Error(Errc::InvalidConfig, "custom families have no analytic jet");
  }
  return {};
}

Jet2 jet_fd(const FamilyKind& kind, Real alpha, Real beta) {
  const Real scale = scale_of(alpha, beta);
  const Real h1 = 1e-6 * scale;
  const Real pole = kind.pole_distance(alpha, beta);
  if (!(pole > 10 * h1))
    throw Error(Errc::TooCloseToSingularLocus,
                "point within 10 stencil steps of the singular locus");

  // Second differences need a step tied to the pole distance: the fourth
  // derivatives grow like pole^-4, so a fixed step loses the truncation/
  // cancellation balance near the locus.
  const Real h2 = 5e-4 * std::min(scale, pole);

  auto L = [&](Real a, Real b) { return kind.L(a, b); };

  Jet2 j;
  j.L = L(alpha, beta);
  j.L_alpha = (L(alpha + h1, beta) - L(alpha - h1, beta)) / (2 * h1);
  j.L_beta = (L(alpha, beta + h1) - L(alpha, beta - h1)) / (2 * h1);

  // 3x3 stencil at step h2.
  const Real mm = L(alpha - h2, beta - h2), mp = L(alpha - h2, beta + h2);
  const Real pm = L(alpha + h2, beta - h2), pp = L(alpha + h2, beta + h2);
  const Real m0 = L(alpha - h2, beta), p0 = L(alpha + h2, beta);
  const Real zm = L(alpha, beta - h2), zp = L(alpha, beta + h2);
  const Real cc = j.L;
  j.L_alphaalpha = (p0 - 2 * cc + m0) / (h2 * h2);
  j.L_betabeta = (zp - 2 * cc + zm) / (h2 * h2);
  j.L_alphabeta = (pp - pm - mp + mm) / (4 * h2 * h2);
  return j;
}

std::array<Real, 4> euler_residuals(const Jet2& j, Real alpha, Real beta) {
  const Real denom = std::max(Real(1), std::abs(2 * j.L));
  std::array<Real, 4> r;
  r[0] = std::abs(alpha * j.L_alpha + beta * j.L_beta - 2 * j.L) / denom;
  r[1] = std::abs(alpha * j.L_alphaalpha + beta * j.L_alphabeta - j.L_alpha) / denom;
  r[2] = std::abs(alpha * j.L_alphabeta + beta * j.L_betabeta - j.L_beta) / denom;
  r[3] = std::abs(alpha * alpha * j.L_alphaalpha + 2 * alpha * beta * j.L_alphabeta +
                  beta * beta * j.L_betabeta - 2 * j.L) /
         denom;
  return r;
}

}  // namespace rcf
