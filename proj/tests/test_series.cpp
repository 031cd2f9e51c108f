#include <sstream>

#include "doctest.h"
#include "lt/error.hpp"
#include "lt/extensions.hpp"
#include "lt/padic.hpp"
#include "lt/series.hpp"

using namespace lt;

namespace {

// schoolbook product, the oracle for the packed multiplication
Series naive_mul(const Series& a, const Series& b) {
  const int D = std::min(a.cap(), b.cap());
  Series r(a.ring(), D);
  for (int n = 0; n <= D; ++n) {
    Element acc = a.ring()->zero();
    for (int i = 0; i <= n; ++i) acc += a[i] * b[n - i];
    r.set(n, acc);
  }
  return r;
}

// sum_{n<=D} f^n / n!, the oracle for the recurrence
Series partial_sum_exp(const Series& f) {
  const int D = f.cap();
  Series acc = Series::one(f.ring(), D), pw = Series::one(f.ring(), D);
  for (int n = 1; n <= D; ++n) {
    pw = naive_mul(pw, f);
    Series t = pw;
    for (int k = 0; k <= D; ++k) t.set(k, pw[k].div_int(n));
    pw = t;
    acc += pw;
  }
  return acc;
}

Series random_series(const RingPtr& R, int D, unsigned seed, bool unit_constant) {
  Series s(R, D);
  unsigned x = seed;
  for (int n = 0; n <= D; ++n) {
    Element c = R->zero();
    for (int i = 0; i < R->e(); ++i) {
      x = x * 1664525u + 1013904223u;
      Element pi_i = R->uniformizer().pow(static_cast<long>(i));
      c += R->embed(R->base()->from_int((x >> 8) % 1000) + R->base()->generator() * R->base()->from_int((x >> 3) % 7)) * pi_i;
    }
    s.set(n, c);
  }
  if (unit_constant) s.set(0, R->one() + R->uniformizer());
  return s;
}

}  // namespace

TEST_CASE("series: packed product matches schoolbook") {
  for (int d : {1, 2}) {
    auto K = Ring::unramified(3, d, 12);
    Tower tw = build_tower(K, K->one());
    for (const RingPtr& R : {K, tw.L, tw.M}) {
      Series a = random_series(R, 20, 1, false), b = random_series(R, 17, 2, false);
      Series b2 = b;
      b2.set(3, b[3].mul_p_power(-2));  // a denominator
      Series c = a * b2, o = naive_mul(a, b2);
      for (int n = 0; n <= 17; ++n) {
        CHECK(equal_to_precision(c[n], o[n]));
        CHECK(c[n].precision() == o[n].precision());
      }
    }
  }
}

TEST_CASE("series: ring axioms") {
  auto K = Ring::unramified(5, 2, 10);
  Series a = random_series(K, 12, 3, false), b = random_series(K, 12, 4, false), c = random_series(K, 12, 5, false);
  CHECK((a * (b + c) - (a * b + a * c)).is_zero());
  CHECK(((a * b) * c - a * (b * c)).is_zero());
  CHECK((a * b - b * a).is_zero());
  CHECK((a + Series(K, 12) - a).is_zero());
}

TEST_CASE("series: exp of zero and of gamma X") {
  auto K = Ring::unramified(3, 1, 12);
  Tower tw = build_tower(K, K->one());
  CHECK((series_exp(Series(tw.Kp, 10)) - Series::one(tw.Kp, 10)).is_zero());
  Series f = Series::monomial(tw.gamma(), 1, 10);
  Series g = series_exp(f);
  CHECK(equal_to_precision(g[0], tw.Kp->one()));
  CHECK(equal_to_precision(g[1], tw.gamma()));
  CHECK(equal_to_precision(g[2], tw.Kp->from_int(-3).div_int(2)));
  CHECK_THROWS_AS(series_exp(Series::one(K, 4)), Error);
}

TEST_CASE("series: recurrence exp matches partial summation") {
  auto K = Ring::unramified(3, 1, 30);
  Tower tw = build_tower(K, K->one());
  // Dwork exponent with a denominator-carrying term
  const int D = 20;
  Series f = Series::monomial(tw.gamma(), 1, D) - Series::monomial(tw.gamma(), 3, D) +
             Series::monomial(tw.gamma().mul_p_power(-1), 9, D);
  Series a = series_exp(f), b = partial_sum_exp(f);
  for (int n = 0; n <= D; ++n) CHECK(equal_to_precision(a[n], b[n]));
  CHECK((a * series_exp(-f) - Series::one(tw.Kp, D)).is_zero());
}

TEST_CASE("series: log inverts exp and is additive") {
  auto K = Ring::unramified(3, 2, 30);
  const int D = 16;
  Series f = random_series(K, D, 9, false).scale(K->from_int(3));
  f.set(0, K->zero());
  Series g = random_series(K, D, 10, false).scale(K->from_int(3));
  g.set(0, K->zero());
  CHECK(series_log(series_exp(f)).residual_valuation(f) >= 12);
  CHECK(series_log(Series::one(K, D)).is_zero());
  Series lhs = series_log(series_exp(f) * series_exp(g));
  CHECK((lhs - (f + g)).is_zero());
  CHECK((series_exp(f + g) - series_exp(f) * series_exp(g)).is_zero());
}

TEST_CASE("series: log of the Dwork series") {
  auto K = Ring::unramified(3, 1, 40);
  Tower tw = build_tower(K, K->one());
  const int D = 30;
  Series f = Series::monomial(tw.gamma(), 1, D) - Series::monomial(tw.gamma(), 3, D);
  CHECK((series_log(series_exp(f)) - f).is_zero());
}

TEST_CASE("series: inverse, substitution, composition") {
  auto K = Ring::unramified(5, 1, 12);
  Series a = random_series(K, 15, 11, true);
  CHECK((a * a.inverse() - Series::one(K, 15)).is_zero());
  Series x = Series::monomial(K->one(), 1, 15);
  Series sq = x * x;
  CHECK((a.compose(sq) - a.substitute_power(2)).is_zero());
  const Element pt = teichmuller_lift(K, 2);
  Series low(K, 14);  // degree 7 polynomial with room for X -> X^2
  for (int n = 0; n <= 7; ++n) low.set(n, a[n]);
  CHECK(equal_to_precision(low.substitute_power(2).evaluate(pt), low.evaluate(pt * pt)));
  CHECK_THROWS_AS(Series(K, 4).inverse(), Error);
}

TEST_CASE("series: derivation rule") {
  auto K = Ring::unramified(3, 2, 12);
  Series a = random_series(K, 14, 21, false), b = random_series(K, 14, 22, false);
  CHECK(((a * b).derivative() - (a * b.derivative() + b * a.derivative())).is_zero());
}

TEST_CASE("series: overconvergence report and tail certification") {
  auto K = Ring::unramified(3, 1, 12);
  auto rep = overconvergence_report(Series::one(K, 50), 10, 50);
  CHECK(rep.integral_up_to == 50);
  CHECK(rep.slope_infinite);
  CHECK(equal_to_precision(evaluate_at_unit(Series::monomial(K->from_int(7), 0, 10), K->one(), 12).value,
                           K->from_int(7)));
  // a_n = p^n: slope 1
  Series s(K, 20);
  for (int n = 0; n <= 20; ++n) s.set(n, K->one().mul_p_power(std::min(n, 11)));
  auto r2 = overconvergence_report(s, 0, 10);
  CHECK(r2.slope == doctest::Approx(1.0));
  // non-integral profile cannot be certified
  s.set(3, K->one().mul_p_power(-1));
  CHECK_THROWS_AS(certify_tail(s, 5), Error);
  std::ostringstream os;
  write_valuation_csv(os, Series::one(K, 2));
  CHECK(os.str().rfind("n,valuation\n0,0\n", 0) == 0);
}
