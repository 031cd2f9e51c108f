#include <random>

#include "doctest.h"
#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"
#include "lt/witt.hpp"

using namespace lt;

namespace {

Element random_integral(const RingPtr& R, std::mt19937& rng) {
  std::uniform_int_distribution<long> dist(0, 100000);
  Element x = R->zero();
  Element g = R->one();
  for (int j = 0; j < R->d(); ++j) {
    x += R->from_int(dist(rng)) * g;
    g *= R->generator();
  }
  return x;
}

bool same(const WittVector& a, const WittVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal_to_precision(a[i], b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("witt: ghost/unghost round trips") {
  std::mt19937 rng(7);
  int count = 0;
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 2, 30);
    for (int trial = 0; trial < 100; ++trial) {
      WittVector w;
      for (int i = 0; i < 4; ++i) w.push_back(random_integral(K, rng));
      CHECK(same(unghost(ghost(w)), w));
      ++count;
    }
  }
  CHECK(count == 200);
}

TEST_CASE("witt: ghost components by hand") {
  auto K = Ring::unramified(3, 1, 20);
  WittVector w{K->from_int(2), K->from_int(5), K->from_int(7)};
  auto g = ghost(w);
  CHECK(equal_to_precision(g[0], K->from_int(2)));
  CHECK(equal_to_precision(g[1], K->from_int(8 + 15)));
  CHECK(equal_to_precision(g[2], K->from_int(512 + 3 * 125 + 9 * 7)));
}

TEST_CASE("witt: addition of Teichmuller-type vectors") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 1, 20);
    for (long a = 1; a < 6; ++a)
      for (long b = 1; b < 6; ++b) {
        WittVector x{K->from_int(a), K->zero()}, y{K->from_int(b), K->zero()};
        auto s = witt_add(x, y);
        mpz_class ap, bp, sp;
        mpz_ui_pow_ui(ap.get_mpz_t(), a, p);
        mpz_ui_pow_ui(bp.get_mpz_t(), b, p);
        mpz_ui_pow_ui(sp.get_mpz_t(), a + b, p);
        mpz_class s1 = (ap + bp - sp) / p;
        CHECK(equal_to_precision(s[0], K->from_int(a + b)));
        CHECK(equal_to_precision(s[1], K->from_mpz(s1)));
      }
  }
}

TEST_CASE("witt: multiplication is commutative and distributes over ghosts") {
  std::mt19937 rng(11);
  auto K = Ring::unramified(3, 2, 30);
  for (int trial = 0; trial < 10; ++trial) {
    WittVector a, b;
    for (int i = 0; i < 3; ++i) {
      a.push_back(random_integral(K, rng));
      b.push_back(random_integral(K, rng));
    }
    CHECK(same(witt_mul(a, b), witt_mul(b, a)));
    auto gp = ghost(witt_mul(a, b));
    auto ga = ghost(a), gb = ghost(b);
    for (int i = 0; i < 3; ++i) CHECK(equal_to_precision(gp[i], ga[i] * gb[i]));
  }
}

TEST_CASE("witt: unghost rejects vectors outside the image") {
  auto K = Ring::unramified(3, 1, 10);
  CHECK_THROWS_AS(unghost({K->zero(), K->one()}), Error);
  CHECK_NOTHROW(unghost({K->one(), K->one()}));
}

TEST_CASE("witt: bracket map of X at a coherent root") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 1, 12);
    const Element u = teichmuller_lift(K, 2);
    const int n = 3;
    CoherentRoots cr = coherent_roots(K, u, n);
    const Poly hx{K->zero(), K->one()};
    auto lam = bracket_map(hx, cr.omega[n], u, n + 1);
    auto g = ghost(lam);
    for (int i = 0; i <= n; ++i) CHECK(equal_to_precision(g[i], cr.omega[n - i]));
    for (const auto& c : lam) CHECK(c.is_integral());
  }
}

TEST_CASE("witt: bracket map of f_u(X)/X - up is topologically nilpotent") {
  auto K = Ring::unramified(3, 1, 12);
  const Element u = K->one();
  CoherentRoots cr = coherent_roots(K, u, 3);
  Poly h(3, K->zero());
  h[2] = K->one();
  auto lam = bracket_map(h, cr.omega[3], u, 4);
  for (const auto& c : lam) CHECK(c.valuation() > 0);
}

TEST_CASE("witt: unit component index follows v_p(a_0)") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 1, 16);
    const Element u = K->one();
    CoherentRoots cr = coherent_roots(K, u, 4);
    const Element unit = K->from_int(2);
    const Element zero = K->zero();
    for (int k : {0, 1, 2, -1}) {
      const Element a0 = k < 0 ? zero : unit.mul_p_power(k);
      Poly h{a0, K->from_int(1), K->from_int(p + 1)};
      auto res = unit_pattern_check(h, cr.omega[4], u, 4);
      CHECK(res.consistent);
      if (k >= 0) {
        REQUIRE(res.r.has_value());
        CHECK(*res.r == k);
        for (int i = 0; i < k; ++i) CHECK_FALSE(res.unit[i]);
      } else {
        CHECK_FALSE(res.r.has_value());
      }
    }
  }
}

TEST_CASE("witt: Artin-Hasse exponential") {
  auto K = Ring::unramified(3, 1, 20);
  WittVector one{K->one(), K->zero(), K->zero()};
  Series E = artin_hasse_relative(one, 20);
  CHECK(equal_to_precision(E[1], K->one()));
  CHECK(equal_to_precision(E[2], K->one().div_int(2)));
  // 1/3! + 1/3 from X^3/3
  CHECK(equal_to_precision(E[3], K->one().div_int(2)));
  for (int n = 0; n <= 20; ++n) CHECK(E[n].is_integral());
  WittVector bad{K->one().mul_p_power(-1), K->zero()};
  CHECK_THROWS_AS(artin_hasse_relative(bad, 10), Error);
}
