#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rcf/expr.hpp"
#include "rcf/types.hpp"

namespace rcf {

/// A metric definition: dimension plus the coefficient fields of
/// alpha^2 = Re{a_ij eta^i eta^j + a_ij-bar eta^i etabar^j} and
/// beta = Re{b_i eta^i}.
struct MetricData {
  int n = 0;
  FieldTable fields;
  std::string source;  // fixture name or file path, for reports

  /// Built-in fixtures.
  static MetricData flat_real(int n = 2,
                              std::optional<CVector> b = std::nullopt);
  static MetricData c3_example();
  static MetricData random_seeded(std::uint64_t seed, int n = 3);
  static MetricData from_file(const std::string& path);
  static MetricData fixture(const std::string& name, std::uint64_t seed,
                            int n_hint = 0,
                            std::optional<CVector> b = std::nullopt);
};

struct EvaluationPoint {
  CVector z;
  CVector eta;
};

/// Pointwise ground data: alpha, beta, coefficient matrices and the angular
/// covectors l_i = a_ij eta^j + a_ij-bar etabar^j, l_ibar = conj(l_i).
struct GroundValues {
  Real alpha = 0.0;
  Real alpha_sq = 0.0;
  Real beta = 0.0;
  CMatrix a;        // symmetric a_ij at z
  CMatrix a_mixed;  // Hermitian part of a_ij-bar at z
  CVector b;
  CVector l;
  CVector l_bar;
  CVector eta;  // echo of the fiber point
};

/// Scalars of the inversion pipeline: gamma = l.eta, epsilon = b.eta,
/// b_up = a^{-1} b, omega = b.b_up, delta = l.b_up.
struct ContractionScalars {
  Complex gamma;
  Complex epsilon;
  Complex omega;
  Complex delta;
  CVector b_up;
  CVector eta_up_check;  // a^{-1} l; equals eta when a_mixed = 0
};

/// Evaluates the fields at p and forms alpha, beta, l. Throws ZeroSection,
/// DegenerateAlpha (alpha^2 <= 1e-14 |eta|^2), DimensionMismatch.
///
/// The mixed coefficient matrix enters alpha^2 only through its Hermitian
/// part, which is what gets stored; with that choice l_i is the exact
/// Wirtinger derivative 2 alpha d(alpha)/d(eta^i) and l_bar = conj(l).
GroundValues ground_values(const MetricData& m, const EvaluationPoint& p);

/// Throws SingularBaseMetric when a_ij is not invertible.
ContractionScalars contraction_scalars(const GroundValues& g);

/// beta > alpha > 0, the region where the infinite-series metric is a
/// positive Finsler function.
bool in_validity_region(const GroundValues& g);

}  // namespace rcf
