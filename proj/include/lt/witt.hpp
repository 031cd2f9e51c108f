#pragma once

#include <optional>
#include <vector>

#include "lt/poly.hpp"
#include "lt/ring.hpp"
#include "lt/series.hpp"

namespace lt {

/// Witt vector (lambda_0, ..., lambda_n) over a Ring.
using WittVector = std::vector<Element>;

/// g_n = sum_{i<=n} p^i lambda_i^{p^{n-i}}.
std::vector<Element> ghost(const WittVector& w);

/// Inverse of ghost. Throws Error(NotInGhostImage) when a division by p^n is
/// not integral, Error(PrecisionExhausted) when it uses up all known digits.
WittVector unghost(const std::vector<Element>& g);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);

/// [h(x)] of length `length`: the Witt vector with ghost vector
/// <h(x), h(f_u(x)), h(f_u(f_u(x))), ...>, f_u(X) = X^p + u p X.
/// h has coefficients in O_K, u is a unit of O_K, v(x) >= 1.
WittVector bracket_map(const Poly& h, const Element& x, const Element& u, int length);

/// E(lambda, X) = exp(sum_i lambda^{(i)} X^{p^i} / p^i) truncated at D.
/// Throws Error(IntegralityViolation) if a coefficient is not integral.
Series artin_hasse_relative(const WittVector& lambda, int D);

struct UnitPattern {
  std::optional<int> r;  // first index with lambda_r a unit
  std::vector<bool> unit;  // per component
  int vp_a0 = -1;  // v_p(a_0), -1 for a_0 = 0
  bool consistent = false;  // the valuation pattern agrees with v_p(a_0)
};

/// Computes [h(x)] and checks: v_p(a_0) = r iff lambda_0..lambda_{r-1} are
/// non-units and lambda_r is a unit; a_0 = 0 iff no component is a unit.
UnitPattern unit_pattern_check(const Poly& h, const Element& x, const Element& u, int length);

}  // namespace lt
