// Acceptance criteria 1-12. `acceptance` runs all of them, `acceptance k`
// runs criterion k; one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lt/classfield.hpp"
#include "lt/diffmod.hpp"
#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"
#include "lt/witt.hpp"

using namespace lt;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double digits(const Element& x) {
  return std::floor(static_cast<double>(std::min(x.valuation(), x.precision())) / x.ring()->e());
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string failures;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    failures += (pass ? "" : "; ") + what;
    pass = false;
  }
};

bool series_equal(const Series& a, const Series& b) {
  for (int n = 0; n <= std::min(a.cap(), b.cap()); ++n)
    if (!equal_to_precision(a[n], b[n])) return false;
  return true;
}

void c1(Outcome& o) {
  for (int p : {3, 5}) {
    const auto t0 = Clock::now();
    ExpWorkbench wb(PrecisionContext::make(p, 1, 12, 256));
    const CertifiedValue z = wb.dwork_at(wb.K()->one());
    const Element one = z.value.ring()->one();
    const double res = digits(z.value.pow(static_cast<long>(p)) - one);
    const bool nontrivial = !equal_to_precision(z.value, one);
    const double t = since(t0);
    o.note << "p=" << p << " E^p-1 digits " << res << " D " << z.D << " " << z.tail.rigor << "; ";
    o.require(res >= 12, "E_gamma(1)^p != 1 at p=" + std::to_string(p));
    o.require(nontrivial, "E_gamma(1) == 1 at p=" + std::to_string(p));
    o.require(z.D == 256, "needed D > 256 at p=" + std::to_string(p));
    o.require(t < 10, "runtime");
  }
}

void c2(Outcome& o) {
  const auto t0 = Clock::now();
  const int p = 3, D = 256;
  auto K = Ring::unramified(PrecisionContext::make(p, 2, 12, D));
  std::set<int> us;
  for (const auto& w : teichmuller_units(K)) us.insert(residue_code(w.pow(2L)));
  o.require(us.size() == 4, "(mu_8)^2 should have 4 elements");
  for (int code : us) {
    const Tower tw = build_tower(K, teichmuller_lift(K, code));
    const auto rep = overconvergence_report(e_u2_series(tw, D), 64, 256);
    o.note << "u=" << code << " slope " << rep.slope << " integral " << rep.integral_up_to << "; ";
    o.require(rep.integral_up_to == D, "non-integral coefficient for u=" + std::to_string(code));
    o.require(rep.slope > 0, "slope not positive for u=" + std::to_string(code));
    o.require(rep.slope >= 0.05, "slope " + std::to_string(rep.slope) + " < 0.05 for u=" + std::to_string(code));
  }
  const double t = since(t0);
  o.note << "runtime " << t << "s";
  o.require(t < 120, "runtime");
}

void c3(Outcome& o) {
  ExpWorkbench wb(PrecisionContext::make(3, 2, 12, 256));
  for (int v : projective_points(FiniteField(3, 2))) {
    const KummerReport r = kummer_generator_check(wb, teichmuller_lift(wb.K(), v));
    o.note << "v=" << v << " residual " << r.residual << " " << r.rigor << "; ";
    o.require(r.residual >= 10, "residual < 10 for v=" + std::to_string(v));
    o.require(r.witness_valuation == 1, "E_gamma(v^p) not in 1+P \\ 1+P^2 for v=" + std::to_string(v));
  }
}

void c4(Outcome& o) {
  for (int p : {3, 5})
    for (int d : {1, 2}) {
      ExpWorkbench wb(PrecisionContext::make(p, d, 12, 256));
      long worst = 1 << 30;
      for (int v : projective_points(FiniteField(p, d))) {
        const SelfDualReport r = self_dual_generator(wb, teichmuller_lift(wb.K(), v));
        worst = std::min(worst, r.gram_digits);
        const std::string tag = " (p=" + std::to_string(p) + ", d=" + std::to_string(d) + ", v=" + std::to_string(v) + ")";
        o.require(r.gram_digits >= 8, "Gram != identity" + tag);
        o.require(r.alpha_valuation == -(p - 1), "alpha valuation" + tag);
        o.require(r.different_valuation == 2 * (p - 1), "different exponent" + tag);
      }
      o.note << "p=" << p << " d=" << d << " gram digits " << worst << "; ";
    }
}

void c5(Outcome& o) {
  auto K = Ring::unramified(3, 2, 6);
  FiniteField k(3, 2);
  int held = 0, total = 0, corrected = 0;
  for (int v : projective_points(k))
    for (int w = 1; w < k.q(); ++w) {
      const auto r = norm_identity_check(K, v, w);
      ++total;
      held += r.literal_pass();
      corrected += r.corrected_pass();
    }
  o.note << "literal congruence holds for " << held << "/" << total << " pairs (N(1 + t w/v) form: " << corrected
         << "/" << total << ")";
  o.require(held == total, "literal congruence");
}

void c6(Outcome& o) {
  std::mt19937 rng(12345);
  for (int d : {2, 3}) {
    const FiniteField k(3, d);
    const auto corr = subextension_correspondence(k);
    o.require(static_cast<int>(corr.points.size()) == (k.q() - 1) / 2, "point count for q=" + std::to_string(k.q()));
    std::set<std::vector<int>> kers(corr.kernels.begin(), corr.kernels.end());
    o.require(kers.size() == corr.points.size(), "kernels not distinct for q=" + std::to_string(k.q()));
    const auto& pts = corr.points;
    for (int a : pts)
      for (int b : pts)
        if (a != b) o.require(line_points(k, a, b).size() == 4, "line without p+1 points");
    long triples = 0;
    bool agree = true;
    if (d == 2) {
      for (int a : pts)
        for (int b : pts)
          for (int c : pts)
            if (a != b) {
              agree = agree && line_containment(k, c, a, b).agree();
              ++triples;
            }
    } else {
      while (triples < 500) {
        const int a = pts[rng() % pts.size()], b = pts[rng() % pts.size()], c = pts[rng() % pts.size()];
        if (a == b) continue;
        agree = agree && line_containment(k, c, a, b).agree();
        ++triples;
      }
    }
    o.require(agree, "span and kernel characterizations disagree for q=" + std::to_string(k.q()));
    o.note << "q=" << k.q() << " kernels " << kers.size() << " triples " << triples << "; ";
  }
}

void c7(Outcome& o) {
  for (int d : {2, 3}) {
    const FiniteField k(3, d);
    const auto e = frobenius_equivariance(k);
    o.require(e.equivariant, "kernel(sigma v) != sigma(kernel v) for q=" + std::to_string(k.q()));
    o.require(e.fixed_match(), "fixed points differ for q=" + std::to_string(k.q()));
    o.note << "q=" << k.q() << " fixed u " << e.fixed_by_power.size() << "; ";
  }
}

void c8(Outcome& o) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> dist(0, 1000000);
  auto K = Ring::unramified(3, 2, 30);
  int exact = 0;
  for (int t = 0; t < 200; ++t) {
    WittVector w;
    for (int i = 0; i < 4; ++i) w.push_back(K->from_int(dist(rng)) + K->from_int(dist(rng)) * K->generator());
    const auto back = unghost(ghost(w));
    bool same = true;
    for (int i = 0; i < 4; ++i) same = same && equal_to_precision(back[i], w[i]);
    exact += same;
  }
  o.require(exact == 200, "ghost/unghost round trip");
  auto K1 = Ring::unramified(3, 1, 16);
  const int n = 3;
  const CoherentRoots cr = coherent_roots(K1, K1->one(), n);
  const auto g = ghost(bracket_map({K1->zero(), K1->one()}, cr.omega[n], K1->one(), n + 1));
  for (int i = 0; i <= n; ++i) o.require(equal_to_precision(g[i], cr.omega[n - i]), "bracket ghost component");
  const CoherentRoots cr4 = coherent_roots(K1, K1->one(), 4);
  for (int k : {0, 1, 2, -1}) {
    const Element a0 = k < 0 ? K1->zero() : K1->from_int(2).mul_p_power(k);
    const auto res = unit_pattern_check({a0, K1->one(), K1->from_int(4)}, cr4.omega[4], K1->one(), 4);
    o.require(res.consistent && (k < 0 ? !res.r : (res.r && *res.r == k)), "unit pattern for v_p(a0)=" + std::to_string(k));
  }
  o.note << "round trips " << exact << "/200";
}

void c9(Outcome& o) {
  const int p = 5, D = 256;
  auto K = Ring::unramified(PrecisionContext::make(p, 1, 12, D));
  for (int u = 1; u < p; ++u) {
    const CoherentRoots cr = coherent_roots(K, teichmuller_lift(K, u), 3);
    const auto rep = overconvergence_report(e_un_series(cr, 2, D), 64, D);
    const auto f = e_un_factorization(cr, 2, D);
    o.note << "u=" << u << " slope " << rep.slope << " margin " << f.residual_margin << "; ";
    o.require(rep.integral_up_to == D, "integrality for u=" + std::to_string(u));
    o.require(rep.slope > 0, "slope for u=" + std::to_string(u));
    o.require(f.residual_margin >= 0, "factorization residual for u=" + std::to_string(u));
  }
}

void c10(Outcome& o) {
  struct Run {
    int p, u, n;
  };
  for (Run r : {Run{3, 1, 1}, Run{3, 1, 2}, Run{5, 1, 2}, Run{5, 2, 2}, Run{5, 3, 2}, Run{5, 4, 2}}) {
    const auto t0 = Clock::now();
    PrecisionContext ctx{r.p, 1, 8, 128, 0};
    auto K = Ring::unramified(r.p, 1, 10);
    const auto rep = verify_frobenius_structure(ctx, teichmuller_lift(K, r.u), r.n);
    const double t = since(t0);
    o.require(rep.pass, "identity for p=" + std::to_string(r.p) + " u=" + std::to_string(r.u));
    o.require(t < 60, "runtime");
    o.note << "(p,u,n)=(" << r.p << "," << r.u << "," << r.n << ") " << rep.residual_digits << " digits; ";
  }
}

void c11(Outcome& o) {
  for (auto [p, d] : {std::pair{3, 1}, {3, 2}, {3, 3}, {5, 2}}) {
    auto K = Ring::unramified(p, d, 10);
    o.require(decomposition_determinant(normal_basis_eta(K)).is_unit(), "eta-basis determinant not a unit");
  }
  const auto ug = unit_group_decomposition(3, 2);
  o.require(ug.pass(), "(1+P)/(1+P^2) not generated");
  for (auto [p, d] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
    const auto w = wreath_model(p, d);
    o.require(w.relations && w.order == w.expected, "wreath model order");
  }
  o.note << "classes " << ug.classes << "/" << ug.expected << " wreath(3,2) " << wreath_model(3, 2).order;
}

void c12(Outcome& o) {
  auto K = Ring::unramified(3, 2, 40);
  const Element eta = normal_basis_eta(K);
  o.require(series_equal(lubin_tate_endo(K->one(), 32), Series::monomial(K->one(), 1, 32)), "[1](X) != X");
  const Element a = K->one() - eta.mul_int(3);
  const Series f = lubin_tate_endo(a, 32);
  const long res = lubin_tate_residual(f);
  o.require(res >= 0, "functional equation residual");
  const Element b = K->from_int(2) + eta;
  o.require(series_equal(lubin_tate_endo(a, 16).compose(lubin_tate_endo(b, 16)), lubin_tate_endo(a * b, 16)),
            "[a][b] != [ab]");
  o.note << "residual margin " << res << ", [a] known to " << f[32].precision() << " digits at X^32";
}

const std::function<void(Outcome&)> criteria[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};

bool run_one(int k) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    criteria[k - 1](o);
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  std::string note = o.note.str();
  while (!note.empty() && (note.back() == ' ' || note.back() == ';')) note.pop_back();
  if (!o.pass) note += " | failed: " + o.failures;
  std::printf("criterion %2d: %s  [%.2fs] %s\n", k, o.pass ? "PASS" : "FAIL", since(t0), note.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  bool ok = true;
  if (argc > 1) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 12) {
      std::fprintf(stderr, "criterion must be 1..12\n");
      return 2;
    }
    ok = run_one(k);
  } else {
    for (int k = 1; k <= 12; ++k) ok = run_one(k) && ok;
  }
  return ok ? 0 : 1;
}
