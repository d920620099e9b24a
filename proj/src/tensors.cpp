#include "rcf/tensors.hpp"

#include <cmath>
#include <vector>

#include "rcf/errors.hpp"
#include "rcf/linalg.hpp"

namespace rcf {

MetricTensors assemble_tensors(const GroundValues& gv, const Invariants& inv) {
  const CVector& l = gv.l;
  const CVector& b = gv.b;
  const CVector lb = gv.l_bar;
  const CVector bb = b.conjugate();

  MetricTensors t;
  t.g = inv.rho0 * gv.a + inv.rho_m2 * (l * l.transpose()) +
        inv.mu0 * (b * b.transpose()) +
        inv.rho_m1 * (l * b.transpose() + b * l.transpose());
  t.g_mixed = inv.rho0 * gv.a_mixed + inv.rho_m2 * (l * lb.transpose()) +
              inv.mu0 * (b * bb.transpose()) +
              inv.rho_m1 * (l * bb.transpose() + b * lb.transpose());
  t.g_barbar = t.g.conjugate();
  t.eta_lower = inv.rho0 * l + inv.rho1 * b;
  return t;
}

MetricTensors assemble_tensors_sigma(const GroundValues& gv,
                                     const Invariants& inv,
                                     const SigmaInvariants& sig) {
  const CVector& l = gv.l;
  const CVector& b = gv.b;
  const CVector eta_low = inv.rho0 * l + inv.rho1 * b;
  const CVector lb = gv.l_bar;
  const CVector bb = b.conjugate();
  const CVector eta_low_bar = eta_low.conjugate();

  MetricTensors t;
  t.g = inv.rho0 * (gv.a - sig.sigma1 * (l * l.transpose()) +
                    sig.sigma2 * (b * b.transpose()) +
                    sig.sigma3 * (eta_low * eta_low.transpose()));
  t.g_mixed = inv.rho0 * (gv.a_mixed - sig.sigma1 * (l * lb.transpose()) +
                          sig.sigma2 * (b * bb.transpose()) +
                          sig.sigma3 * (eta_low * eta_low_bar.transpose()));
  t.g_barbar = t.g.conjugate();
  t.eta_lower = eta_low;
  return t;
}

namespace {

// Scalar fiber field L(eta) with the z-dependence frozen: coefficients are
// evaluated once, so stencil evaluations are two matvecs each.
struct FiberField {
  CMatrix a;
  CMatrix a_mixed;
  CVector b;
  const FamilyKind& kind;

  Real operator()(const CVector& eta) const {
    const CVector eta_bar = eta.conjugate();
    const CVector l = a * eta + a_mixed * eta_bar;
    const Real alpha_sq = contract(l, eta).real();
    const Real beta = contract(b, eta).real();
    if (!(alpha_sq > 0)) throw Error(Errc::DegenerateAlpha, "stencil left alpha^2 > 0");
    return kind.L(std::sqrt(alpha_sq), beta);
  }
};

// Real-coordinate view: x in R^{2n}, eta^k = x[k] + i x[n+k].
CVector to_eta(const std::vector<Real>& x, int n) {
  CVector eta(n);
  for (int k = 0; k < n; ++k) eta[k] = Complex(x[k], x[n + k]);
  return eta;
}

struct WirtingerBlocks {
  CMatrix g;
  CMatrix g_mixed;
  CVector eta_lower;
};

WirtingerBlocks wirtinger_fd(const FiberField& f, const CVector& eta, Real h) {
  const int n = static_cast<int>(eta.size());
  const int dim = 2 * n;
  std::vector<Real> x0(dim);
  for (int k = 0; k < n; ++k) {
    x0[k] = eta[k].real();
    x0[n + k] = eta[k].imag();
  }

  auto eval_at = [&](const std::vector<Real>& x) { return f(to_eta(x, n)); };
  const Real center = eval_at(x0);

  std::vector<Real> grad(dim);
  Eigen::MatrixXd hess(dim, dim);
  std::vector<Real> x = x0;
  for (int p = 0; p < dim; ++p) {
    x[p] = x0[p] + h;
    const Real fp = eval_at(x);
    x[p] = x0[p] - h;
    const Real fm = eval_at(x);
    x[p] = x0[p];
    grad[p] = (fp - fm) / (2 * h);
    hess(p, p) = (fp - 2 * center + fm) / (h * h);
  }
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      x[p] = x0[p] + h;
      x[q] = x0[q] + h;
      const Real fpp = eval_at(x);
      x[q] = x0[q] - h;
      const Real fpm = eval_at(x);
      x[p] = x0[p] - h;
      const Real fmm = eval_at(x);
      x[q] = x0[q] + h;
      const Real fmp = eval_at(x);
      x[p] = x0[p];
      x[q] = x0[q];
      const Real v = (fpp - fpm - fmp + fmm) / (4 * h * h);
      hess(p, q) = v;
      hess(q, p) = v;
    }
  }

  WirtingerBlocks out;
  out.g = CMatrix(n, n);
  out.g_mixed = CMatrix(n, n);
  out.eta_lower = CVector(n);
  for (int i = 0; i < n; ++i) {
    out.eta_lower[i] = 0.5 * Complex(grad[i], -grad[n + i]);
    for (int j = 0; j < n; ++j) {
      const Real uu = hess(i, j);
      const Real vv = hess(n + i, n + j);
      const Real uv = hess(i, n + j);
      const Real vu = hess(n + i, j);
      out.g(i, j) = 0.25 * Complex(uu - vv, -(uv + vu));
      out.g_mixed(i, j) = 0.25 * Complex(uu + vv, uv - vu);
    }
  }
  out.g = symmetrized(out.g);
  return out;
}

Real block_distance(const WirtingerBlocks& a, const WirtingerBlocks& b) {
  Real d = (a.g - b.g).cwiseAbs().maxCoeff();
  d = std::max(d, (a.g_mixed - b.g_mixed).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

OracleTensors oracle_hessians(const MetricData& m, const EvaluationPoint& p,
                              const FamilyKind& kind) {
  GroundValues gv = ground_values(m, p);
  const Real h = 1e-4 * std::max(Real(1), p.eta.norm());

  // A step of h moves (alpha, beta) by at most about this much.
  const Real slope = gv.b.norm() + gv.l.norm() / gv.alpha + 1.0;
  const Real margin = 10 * h * slope;
  if (!(kind.pole_distance(gv.alpha, gv.beta) > margin) || !(gv.alpha > margin))
    throw Error(Errc::TooCloseToSingularLocus,
                "stencil would cross the singular locus or alpha = 0");

  FiberField field{gv.a, gv.a_mixed, gv.b, kind};
  WirtingerBlocks coarse = wirtinger_fd(field, p.eta, h);
  WirtingerBlocks fine = wirtinger_fd(field, p.eta, h / 2);

  OracleTensors out;
  out.g = fine.g;
  out.g_mixed = fine.g_mixed;
  out.g_barbar = fine.g.conjugate();
  out.eta_lower = fine.eta_lower;
  out.stencil_step = h;
  out.error_estimate = block_distance(coarse, fine);

  const Real g_scale = std::max(inf_norm(out.g), inf_norm(out.g_mixed));
  if (out.error_estimate > 1e-3 * std::max(Real(1), g_scale))
    throw Error(Errc::UnstableStencil, "step-halving estimate exceeds 1e-3 |g|");
  return out;
}

IdentityReport identity_suite(const MetricTensors& t, const GroundValues& gv,
                              Real L) {
  const CVector& eta = gv.eta;
  const CVector eta_bar = eta.conjugate();
  const Real denom = std::max(Real(1), std::abs(2 * L));

  IdentityReport r;
  const Complex quad = contract(eta, t.g * eta);
  const Complex quad_bar = contract(eta_bar, t.g_barbar * eta_bar);
  const Complex mixed = contract(eta, t.g_mixed * eta_bar);
  r.eq24 = std::abs(quad + quad_bar + 2.0 * mixed - 2 * L) / denom;

  const CVector lowered = t.g * eta + t.g_mixed * eta_bar;
  r.eq22_lowering = (lowered - t.eta_lower).cwiseAbs().maxCoeff() / denom;

  const Complex gamma = contract(gv.l, eta);
  const Complex epsilon = contract(gv.b, eta);
  r.prop34_gamma = std::abs(gamma + std::conj(gamma) - 2 * gv.alpha_sq) /
                   std::max(Real(1), 2 * gv.alpha_sq);
  r.prop34_epsilon = std::abs(epsilon + std::conj(epsilon) - 2 * gv.beta) /
                     std::max(Real(1), std::abs(2 * gv.beta));

  if (inf_norm(gv.a_mixed) <= 1e-12 * std::max(Real(1), inf_norm(gv.a))) {
    try {
      ContractionScalars s = contraction_scalars(gv);
      r.prop34_delta =
          std::abs(s.delta - s.epsilon) / std::max(Real(1), std::abs(s.epsilon));
    } catch (const Error&) {
      // singular base metric: delta has no meaning here
    }
  }
  return r;
}

}  // namespace rcf
