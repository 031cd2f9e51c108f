#include "doctest.h"
#include "lt/error.hpp"
#include "lt/extensions.hpp"
#include "lt/padic.hpp"

using namespace lt;

TEST_CASE("extensions: tower identities") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 1, 10);
    Tower tw = build_tower(K, K->one());
    const Element g = tw.gamma();
    CHECK(equal_to_precision(g.pow(p - 1), tw.Kp->from_int(-p)));
    const Element w = tw.omega();
    const Element gL = tw.Kp_to_L(g);
    CHECK(equal_to_precision(w.pow(p), gL - tw.L->from_int(p) * w));
    CHECK(w.valuation() == 1);
    CHECK(tw.L->from_int(p).valuation() == p * (p - 1));
    CHECK(tw.M_to_L(tw.t()).valuation() == p - 1);
    CHECK(tw.t().valuation() == 1);
  }
}

TEST_CASE("extensions: psi_1 for p = 3") {
  auto K = Ring::unramified(3, 1, 8);
  Tower tw = build_tower(K, K->one());
  Poly psi = tw.psi();
  const long want[] = {3, 9, 6, 1};
  for (int i = 0; i < 4; ++i) CHECK(equal_to_precision(psi[i], K->from_int(want[i])));
}

TEST_CASE("extensions: non-Teichmuller u is rejected") {
  auto K = Ring::unramified(3, 1, 8);
  CHECK_THROWS_AS(build_tower(K, K->from_int(4)), Error);
  CHECK_THROWS_AS(build_tower(K, K->from_int(3)), Error);
}

TEST_CASE("extensions: trace and norm") {
  for (int p : {3, 5}) {
    for (int d : {1, 2}) {
      auto K = Ring::unramified(p, d, 10);
      for (const auto& u : teichmuller_units(K)) {
        Tower tw = build_tower(K, u);
        RelativeStructure MK(tw.K_to_M);
        CHECK(equal_to_precision(MK.trace(tw.M->one()), K->from_int(p)));
        // determinant convention: (-1)^p psi(0) = -p
        CHECK(equal_to_precision(MK.norm(tw.t()), K->from_int(-p)));
        // different exponent 2(p-1)
        Poly dpsi = poly_derivative(poly_embed(tw.psi(), tw.M));
        CHECK(poly_eval(dpsi, tw.t()).valuation() == 2 * (p - 1));
        if (d == 2) break;
      }
    }
  }
}

TEST_CASE("extensions: trace through the tower") {
  auto K = Ring::unramified(3, 2, 10);
  Tower tw = build_tower(K, teichmuller_lift(K, 4));
  RelativeStructure LK(tw.K_to_L), LKp(tw.Kp_to_L), KpK(tw.K_to_Kp), LM(tw.M_to_L), MK(tw.K_to_M);
  const Element w = tw.omega();
  Element x = w.pow(3) + tw.L->embed(K->generator()) * w + tw.L->from_int(2);
  CHECK(equal_to_precision(LK.trace(x), KpK.trace(LKp.trace(x))));
  CHECK(equal_to_precision(LK.trace(x), MK.trace(LM.trace(x))));
  CHECK(equal_to_precision(LK.norm(x), KpK.norm(LKp.norm(x))));
  CHECK(equal_to_precision(KpK.norm(tw.gamma()), K->from_int(3)));
}

TEST_CASE("extensions: hensel conjugates") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 2, 10);
    for (int code : {1, 2, 7}) {
      // u = v^{1-p}
      const Element v = teichmuller_lift(K, code);
      Tower tw = build_tower(K, v.pow(1 - p));
      auto roots = hensel_conjugates(tw);
      REQUIRE(roots.size() == static_cast<std::size_t>(p));
      CHECK(equal_to_precision(roots[0], tw.t()));
      Poly psi = poly_embed(tw.psi(), tw.M);
      Element prod = tw.M->one();
      for (std::size_t i = 0; i < roots.size(); ++i) {
        CHECK(poly_eval(psi, roots[i]).is_zero());
        prod *= roots[i];
        for (std::size_t j = i + 1; j < roots.size(); ++j) CHECK((roots[i] - roots[j]).valuation() == 2);
      }
      CHECK(equal_to_precision(prod, tw.M->from_int(-p)));
      // each substitution t -> root permutes the roots
      for (const auto& r : roots) {
        RingHom s(tw.M, tw.M, r);
        std::vector<int> hit(roots.size(), 0);
        for (const auto& x : roots) {
          Element y = s(x);
          for (std::size_t j = 0; j < roots.size(); ++j)
            if (equal_to_precision(y, roots[j])) hit[j]++;
        }
        for (int h : hit) CHECK(h == 1);
      }
    }
  }
}

TEST_CASE("extensions: psi_u does not split when u is not a (p-1)-th power") {
  // the residue equation is z^{p-1} = u
  auto K = Ring::unramified(5, 2, 8);
  Tower tw = build_tower(K, teichmuller_lift(K, 2));
  CHECK_THROWS_AS(hensel_conjugates(tw), Error);
}

TEST_CASE("extensions: express in subfield") {
  auto K = Ring::unramified(3, 1, 10);
  Tower tw = build_tower(K, K->one());
  Element one = express_in_subfield(tw, tw.L->one());
  CHECK(equal_to_precision(one, tw.M->one()));
  Element t = express_in_subfield(tw, tw.omega().pow(2));
  CHECK(equal_to_precision(t, tw.t()));
  Element x = tw.t().pow(2) + tw.t().mul_int(5) + tw.M->from_int(7);
  CHECK(equal_to_precision(express_in_subfield(tw, tw.M_to_L(x)), x));
  CHECK_THROWS_AS(express_in_subfield(tw, tw.omega()), Error);
}
