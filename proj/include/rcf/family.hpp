#pragma once

#include <array>
#include <functional>
#include <string>

#include "rcf/types.hpp"

namespace rcf {

/// L(alpha, beta) and its partial derivatives through second order.
struct Jet2 {
  Real L = 0, L_alpha = 0, L_beta = 0;
  Real L_alphaalpha = 0, L_alphabeta = 0, L_betabeta = 0;
};

enum class Family { InfiniteSeries, Randers, Kropina, Matsumoto, Custom };

/// An (alpha,beta)-metric family: the squared metric function L plus its
/// singular locus. Custom kinds wrap a black-box L.
struct FamilyKind {
  Family tag = Family::InfiniteSeries;
  std::function<Real(Real, Real)> custom;  // only for Family::Custom

  static FamilyKind infinite_series() { return {Family::InfiniteSeries, nullptr}; }
  static FamilyKind randers() { return {Family::Randers, nullptr}; }
  static FamilyKind kropina() { return {Family::Kropina, nullptr}; }
  static FamilyKind matsumoto() { return {Family::Matsumoto, nullptr}; }
  static FamilyKind custom(std::function<Real(Real, Real)> L) {
    return {Family::Custom, std::move(L)};
  }
  static FamilyKind from_name(const std::string& name);
  const char* name() const;

  Real L(Real alpha, Real beta) const;

  /// Distance to the singular locus (alpha = beta for infinite-series and
  /// Matsumoto, beta = 0 for Kropina); +inf when the family has none.
  Real pole_distance(Real alpha, Real beta) const;
};

/// Closed-form jet of L = beta^4/(beta-alpha)^2. Throws
/// PoleAtAlphaEqualsBeta when |beta - alpha| <= 1e-9 max(1, alpha, |beta|).
Jet2 jet_infinite_series(Real alpha, Real beta);

/// Closed-form jets of the comparator families (and infinite-series).
/// Throws PoleAtAlphaEqualsBeta near the family's singular locus, or
/// InvalidConfig for Custom kinds (which only have FD jets).
Jet2 jet_analytic(const FamilyKind& kind, Real alpha, Real beta);

/// Central finite differences of the family's L on a 3x3 (alpha,beta)
/// stencil: O(h^2) first derivatives, 9-point second derivatives. Throws
/// TooCloseToSingularLocus when the point is within 10 first-derivative
/// steps of the singular locus.
Jet2 jet_fd(const FamilyKind& kind, Real alpha, Real beta);

/// Absolute residuals of the four Euler 2-homogeneity identities
///   alpha L_a + beta L_b = 2L
///   alpha L_aa + beta L_ab = L_a
///   alpha L_ab + beta L_bb = L_b
///   alpha^2 L_aa + 2 alpha beta L_ab + beta^2 L_bb = 2L
/// each normalized by max(1, |2L|).
std::array<Real, 4> euler_residuals(const Jet2& jet, Real alpha, Real beta);

}  // namespace rcf
