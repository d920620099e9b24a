#include "rcf/metric.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "rcf/errors.hpp"
#include "rcf/linalg.hpp"

namespace rcf {

MetricData MetricData::flat_real(int n, std::optional<CVector> b) {
  if (n < 1) throw Error(Errc::InvalidConfig, "flat-real needs n >= 1");
  CVector bv;
  if (b) {
    bv = *b;
    if (bv.size() != n)
      throw Error(Errc::DimensionMismatch, "flat-real b override must have length n");
  } else {
    bv = CVector::Zero(n);
    bv[0] = Complex(2.0);
  }
  MetricData m;
  m.n = n;
  m.source = "flat-real";
  m.fields = FieldTable::zeros(n);
  for (int i = 0; i < n; ++i) m.fields.set_sym(i, i, make_literal(Complex(1.0)));
  for (int i = 0; i < n; ++i) m.fields.b[i] = make_literal(bv[i]);
  return m;
}

MetricData MetricData::c3_example() {
  MetricData m;
  m.n = 3;
  m.source = "c3-example";
  m.fields = FieldTable::zeros(3);
  m.fields.set_mixed(0, 0, parse("exp(z1 + conj(z1))"));
  m.fields.set_mixed(1, 1, parse("exp(z2 + conj(z2))"));
  m.fields.set_mixed(2, 2, parse("exp(z1 + z2 + z3 + conj(z3))"));
  m.fields.b[1] = parse("exp(z2)");
  return m;
}

MetricData MetricData::random_seeded(std::uint64_t seed, int n) {
  if (n < 1) throw Error(Errc::InvalidConfig, "random-seeded needs n >= 1");
  std::mt19937_64 gen(seed);
  auto unit = [&gen]() {  // uniform in [-1, 1), bit-exact across platforms
    return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0;
  };

  MetricData m;
  m.n = n;
  m.source = "random-seeded";
  m.fields = FieldTable::zeros(n);
  // Symmetric perturbation of the identity keeps a_ij well conditioned.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Complex base = i == j ? Complex(1.0) : Complex(0.0);
      Complex noise(0.12 * unit(), 0.12 * unit());
      m.fields.set_sym(i, j, make_literal(base + noise));
    }
  }
  // A mostly-real 1-form with |b| ~ 3 so that beta > alpha is reachable.
  for (int i = 0; i < n; ++i) {
    Complex v(0.3 * unit(), 0.3 * unit());
    if (i == 0) v += Complex(3.0);
    m.fields.b[i] = make_literal(v);
  }
  return m;
}

MetricData MetricData::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidMetricFile, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  MetricData m;
  m.fields = field_table_from_json(text.str());
  m.n = m.fields.n;
  m.source = path;
  return m;
}

MetricData MetricData::fixture(const std::string& name, std::uint64_t seed,
                               int n_hint, std::optional<CVector> b) {
  if (name == "flat-real") return flat_real(n_hint > 0 ? n_hint : 2, std::move(b));
  if (b) throw Error(Errc::InvalidConfig, "--b only overrides the flat-real fixture");
  if (name == "c3-example") return c3_example();
  if (name == "random-seeded") return random_seeded(seed, n_hint > 0 ? n_hint : 3);
  throw Error(Errc::InvalidConfig, "unknown fixture " + name +
                                       " (expected flat-real, c3-example or "
                                       "random-seeded)");
}

namespace {

CMatrix eval_matrix(const std::vector<Expr>& cells, int n, const CVector& z) {
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = eval(cells[i * n + j], z);
  return out;
}

}  // namespace

GroundValues ground_values(const MetricData& m, const EvaluationPoint& p) {
  const int n = m.n;
  if (p.z.size() != n || p.eta.size() != n)
    throw Error(Errc::DimensionMismatch, "point dimension differs from the metric's");
  if (p.eta.norm() == 0.0)
    throw Error(Errc::ZeroSection, "eta = 0 is excluded");

  GroundValues g;
  g.eta = p.eta;
  g.a = symmetrized(eval_matrix(m.fields.a_sym, n, p.z));
  g.a_mixed = hermitianized(eval_matrix(m.fields.a_mixed, n, p.z));
  g.b = CVector(n);
  for (int i = 0; i < n; ++i) g.b[i] = eval(m.fields.b[i], p.z);

  const CVector eta_bar = p.eta.conjugate();
  g.l = g.a * p.eta + g.a_mixed * eta_bar;
  g.l_bar = g.l.conjugate();

  // Re{l.eta} = Re{eta^T a eta + eta^T a_mixed etabar}; this form keeps
  // l.eta + lbar.etabar = 2 alpha^2 exact.
  g.alpha_sq = contract(g.l, p.eta).real();
  g.beta = contract(g.b, p.eta).real();

  if (g.alpha_sq <= 1e-14 * p.eta.squaredNorm())
    throw Error(Errc::DegenerateAlpha, "alpha^2 <= 1e-14 |eta|^2");
  g.alpha = std::sqrt(g.alpha_sq);
  return g;
}

ContractionScalars contraction_scalars(const GroundValues& g) {
  ContractionScalars s;
  s.gamma = contract(g.l, g.eta);
  s.epsilon = contract(g.b, g.eta);
  LUResult lu;
  try {
    lu = lu_invert(g.a);
  } catch (const Error& e) {
    if (e.code() == Errc::SingularMatrix)
      throw Error(Errc::SingularBaseMetric, "a_ij is singular at this point");
    throw;
  }
  s.b_up = lu.inverse * g.b;
  s.omega = contract(g.b, s.b_up);
  s.delta = contract(g.l, s.b_up);
  s.eta_up_check = lu.inverse * g.l;
  return s;
}

bool in_validity_region(const GroundValues& g) {
  return g.alpha > 0.0 && g.beta > g.alpha;
}

}  // namespace rcf
