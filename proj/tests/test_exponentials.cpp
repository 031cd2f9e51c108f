#include "doctest.h"
#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"

using namespace lt;

namespace {

bool same_coefficients(const Series& a, const Series& b) {
  if (a.cap() != b.cap()) return false;
  for (int n = 0; n <= a.cap(); ++n) {
    auto x = a[n].stored(), y = b[n].stored();
    if (a[n].shift() != b[n].shift() || x.size() != y.size()) return false;
    const long P = std::min(a[n].precision(), b[n].precision());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (P > 0 && x[i] != y[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exponentials: Dwork series gives a primitive p-th root of unity") {
  for (int p : {3, 5}) {
    auto ctx = PrecisionContext::make(p, 1, 12, 256);
    ExpWorkbench wb(ctx);
    CertifiedValue z = wb.dwork_at(wb.K()->one());
    CHECK(z.tail.rigor == "certified");
    const RingPtr& Kp = z.value.ring();
    CHECK(equal_to_precision(z.value.pow(static_cast<long>(p)), Kp->one()));
    CHECK_FALSE(equal_to_precision(z.value, Kp->one()));
    CHECK((z.value - Kp->one()).valuation() == 1);
  }
}

TEST_CASE("exponentials: E_{u,1} is the Dwork series and E_{1,2} is the tower series") {
  for (int p : {3, 5}) {
    auto K = Ring::unramified(p, 1, 40);
    Tower tw = build_tower(K, K->one());
    CoherentRoots c1 = coherent_roots(K, K->one(), 1);
    CHECK(c1.R->equivalent(*tw.Kp));
    CHECK(same_coefficients(e_un_series(c1, 1, 40), dwork_series(tw, 40)));
    CoherentRoots c2 = coherent_roots(K, K->one(), 2);
    CHECK(c2.R->equivalent(*tw.L));
    CHECK(same_coefficients(e_un_series(c2, 2, 40), e_u2_series(tw, 40)));
  }
}

TEST_CASE("exponentials: coherent roots") {
  auto K = Ring::unramified(3, 2, 12);
  const Element u = teichmuller_lift(K, 4);
  CoherentRoots cr = coherent_roots(K, u, 2);
  const Element& w1 = cr.omega[1];
  CHECK(equal_to_precision(w1.pow(2L), -cr.R->embed(u).mul_int(3)));
  CHECK(cr.omega[2].valuation() == 1);
  CHECK(w1.valuation() == 3);
}

TEST_CASE("exponentials: integrality and symmetry") {
  auto K = Ring::unramified(3, 2, 120);
  for (int code : {1, 4}) {
    const Element v = teichmuller_lift(K, code);
    Tower tw = build_tower(K, v.pow(-2L));
    Series E = e_u2_series(tw, 200);
    auto rep = overconvergence_report(E, 64, 200);
    CHECK(rep.integral_up_to == 200);
    CHECK(rep.slope > 0);
    Series prod = E * E.substitute_neg();
    const Series one = Series::one(tw.L, 200);
    for (int n = 0; n <= 200; ++n) CHECK(equal_to_precision(prod[n], one[n]));
  }
}

TEST_CASE("exponentials: factorization through the relative Artin-Hasse form") {
  auto K = Ring::unramified(3, 1, 60);
  for (int n : {1, 2}) {
    CoherentRoots cr = coherent_roots(K, teichmuller_lift(K, 2), n + 1);
    auto f = e_un_factorization(cr, n, 64);
    CHECK(f.residual_margin >= 0);
    CHECK(f.lambda_topologically_nilpotent);
  }
}

TEST_CASE("exponentials: Kummer generator") {
  auto ctx = PrecisionContext::make(3, 1, 12, 256);
  ExpWorkbench wb(ctx);
  KummerReport r = kummer_generator_check(wb, wb.K()->one());
  CHECK(r.pass);
  CHECK(r.residual >= 10);
  CHECK(r.witness_valuation == 1);
  CHECK(r.rigor == "certified");
}

TEST_CASE("exponentials: self-dual generator") {
  auto ctx = PrecisionContext::make(3, 1, 12, 256);
  ExpWorkbench wb(ctx);
  SelfDualReport r = self_dual_generator(wb, wb.K()->one());
  CHECK(r.pass);
  CHECK(r.gram_digits >= 8);
  CHECK(r.alpha_valuation == -2);
  CHECK(r.different_valuation == 4);
  CHECK(r.involution);
  conjugate_crosscheck(wb, wb.K()->one(), r);
  CHECK(r.set_match_digits >= 8);
}

TEST_CASE("exponentials: smallest primitive root") {
  CHECK(smallest_primitive_root(3) == 2);
  CHECK(smallest_primitive_root(5) == 2);
  CHECK(smallest_primitive_root(7) == 3);
  CHECK(smallest_primitive_root(23) == 5);
}
