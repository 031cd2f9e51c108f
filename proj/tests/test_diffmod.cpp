#include "doctest.h"
#include "lt/diffmod.hpp"
#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"

using namespace lt;

namespace {

bool series_equal(const Series& a, const Series& b) {
  for (int n = 0; n <= std::min(a.cap(), b.cap()); ++n)
    if (!equal_to_precision(a[n], b[n])) return false;
  return true;
}

}  // namespace

TEST_CASE("diffmod: gauge transforms") {
  auto K = Ring::unramified(3, 2, 30);
  const int D = 20;
  Series g(K, D);
  g.set(1, K->generator());
  g.set(4, K->from_int(7));
  CHECK(series_equal(gauge_transform(g, Series::one(K, D)), g));
  CHECK_THROWS_AS(gauge_transform(g, Series::monomial(K->one(), 1, D)), Error);

  const Element c = K->generator().mul_int(3);
  const Series f = series_exp(Series::monomial(c, 1, D));
  CHECK(series_equal(gauge_transform(Series(K, D), f), Series::monomial(c, 1, D)));

  Series f1 = Series::one(K, D), f2 = Series::one(K, D);
  for (int n = 1; n <= D; ++n) {
    f1.set(n, K->from_int(n * n + 1));
    f2.set(n, K->generator() * K->from_int(n));
  }
  CHECK(series_equal(gauge_transform(gauge_transform(g, f1), f2), gauge_transform(g, f1 * f2)));
}

TEST_CASE("diffmod: Frobenius pullback") {
  auto K = Ring::unramified(3, 1, 20);
  const FrobeniusDescriptor id{RingHom::base_embedding(K, K)};
  const int D = 12;
  CHECK(frobenius_pullback({Series(K, D)}, id).g.is_zero());
  const Element c = K->from_int(5);
  auto r = frobenius_pullback({Series::monomial(c, 1, D)}, id).g;
  CHECK(series_equal(r, Series::monomial(c.mul_int(3), 3, D)));
  CHECK_THROWS_AS(frobenius_pullback({Series::monomial(c, 5, D)}, id), Error);
}

TEST_CASE("diffmod: Frobenius structure of E_{u,n}") {
  PrecisionContext ctx{3, 1, 8, 128, 0};
  auto K = Ring::unramified(3, 1, 10);
  for (auto [code, n] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
    auto r = verify_frobenius_structure(ctx, teichmuller_lift(K, code), n);
    CHECK(r.pass);
    CHECK(r.residual_digits >= 8);
  }
  PrecisionContext c5{5, 1, 8, 128, 0};
  auto K5 = Ring::unramified(5, 1, 10);
  for (int code = 1; code < 5; ++code) CHECK(verify_frobenius_structure(c5, teichmuller_lift(K5, code), 2).pass);
  CHECK_THROWS_AS(verify_frobenius_structure(ctx, K->from_int(4), 1), Error);
}

TEST_CASE("diffmod: the identity fails for the wrong coefficient Frobenius") {
  auto K = Ring::unramified(3, 1, 60);
  const Element u = teichmuller_lift(K, 2);
  const CoherentRoots cr = coherent_roots(K, u, 2);
  const int D = 32;
  Series g(cr.R, D);
  g.set(1, cr.omega[2]);
  g.set(3, cr.omega[1]);
  const Series lhs = gauge_transform(g, e_un_series(cr, 2, D).substitute_neg());
  const FrobeniusDescriptor wrong{RingHom::base_embedding(K, cr.R)};
  const FrobeniusDescriptor right{RingHom(cr.R, cr.R, cr.R->embed(u) * cr.R->uniformizer())};
  CHECK_THROWS_AS(frobenius_pullback({g}, wrong), Error);  // g is not over K
  CHECK(series_equal(lhs, frobenius_pullback({g}, right).g));
  const FrobeniusDescriptor identity{RingHom(cr.R, cr.R, cr.R->uniformizer())};
  CHECK_FALSE(series_equal(lhs, frobenius_pullback({g}, identity).g));
}
