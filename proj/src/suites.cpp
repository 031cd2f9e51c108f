#include "lt/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "lt/classfield.hpp"
#include "lt/diffmod.hpp"
#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"
#include "lt/witt.hpp"

namespace lt {

using json = nlohmann::json;

json to_json(const Record& r, bool with_timing) {
  json j;
  j["suite"] = r.suite;
  j["case"] = r.case_id;
  j["status"] = r.status;
  j["residual"] = r.residual ? json(*r.residual) : json(nullptr);
  if (with_timing) j["seconds"] = std::round(r.seconds * 1e4) / 1e4;
  if (!r.details.empty()) j["details"] = r.details;
  if (r.informational) j["informational"] = true;
  return j;
}

namespace {

// p-adic digits known to vanish
double digits(const Element& x) {
  return std::floor(static_cast<double>(std::min(x.valuation(), x.precision())) / x.ring()->e());
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

Case make_case(std::string suite, std::string id, std::function<void(Record&)> body) {
  return {suite, id, [suite, id, body] {
            Record r;
            r.suite = suite;
            r.case_id = id;
            const auto t0 = std::chrono::steady_clock::now();
            try {
              body(r);
            } catch (const Error& e) {
              r.status = "error";
              r.details["error"] = e.what();
            } catch (const std::exception& e) {
              r.status = "error";
              r.details["error"] = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return r;
          }};
}

void maybe_csv(const RunOptions& opt, const std::string& name, const Series& s) {
  if (opt.csv_dir.empty()) return;
  std::filesystem::create_directories(opt.csv_dir);
  std::ofstream os(std::filesystem::path(opt.csv_dir) / (name + ".csv"));
  write_valuation_csv(os, s);
}

bool series_equal(const Series& a, const Series& b) {
  for (int n = 0; n <= std::min(a.cap(), b.cap()); ++n)
    if (!equal_to_precision(a[n], b[n])) return false;
  return true;
}

PrecisionContext with_guard(PrecisionContext c) {
  c.guard = std::max(c.guard, PrecisionContext::min_guard(c.p, c.D));
  return c;
}

std::string vcode(int v) { return "v=" + std::to_string(v); }

// ---------------------------------------------------------------------------

std::vector<Case> dwork_suite(const RunOptions& opt) {
  const PrecisionContext ctx = with_guard(opt.ctx);
  std::vector<Case> cs;
  cs.push_back(make_case("dwork", "root-of-unity", [ctx](Record& r) {
    ExpWorkbench wb(ctx);
    const CertifiedValue z = wb.dwork_at(wb.K()->one());
    const RingPtr& Kp = z.value.ring();
    const Element res = z.value.pow(static_cast<long>(ctx.p)) - Kp->one();
    const long wit = (z.value - Kp->one()).valuation();
    r.residual = digits(res);
    r.details = {{"D", z.D}, {"rigor", z.tail.rigor}, {"tail_bound", z.tail.bound}, {"witness_valuation", wit}};
    r.status = verdict(*r.residual >= ctx.N && wit == 1);
  }));
  cs.push_back(make_case("dwork", "profile", [ctx, opt](Record& r) {
    auto K = Ring::unramified(ctx);
    const Tower tw = build_tower(K, K->one());
    const Series s = dwork_series(tw, ctx.D);
    const auto rep = overconvergence_report(s, 50, std::min(200, ctx.D));
    maybe_csv(opt, "dwork", s);
    r.details = {{"integral_up_to", rep.integral_up_to}, {"slope", rep.slope}, {"intercept", rep.intercept},
                 {"window", {rep.n0, rep.n1}}, {"reference_slope", (ctx.p - 1.0) / (ctx.p * ctx.p)}};
    r.status = verdict(rep.integral_up_to == ctx.D && rep.slope > 0);
  }));
  cs.push_back(make_case("dwork", "log-of-exp", [ctx](Record& r) {
    auto K = Ring::unramified(ctx);
    const Tower tw = build_tower(K, K->one());
    const int D = std::min(ctx.D, 64);
    const Series f = dwork_exponent(tw, D);
    r.status = verdict(series_equal(series_log(series_exp(f)), f));
  }));
  return cs;
}

std::vector<Case> e_u2_suite(const RunOptions& opt) {
  const PrecisionContext ctx = with_guard(opt.ctx);
  std::vector<Case> cs;
  const FiniteField k(ctx.p, ctx.d);
  for (int v : projective_points(k)) {
    cs.push_back(make_case("e-u2", "profile/" + vcode(v), [ctx, opt, v](Record& r) {
      auto K = Ring::unramified(ctx);
      const Element vv = teichmuller_lift(K, v);
      const Tower tw = build_tower(K, vv.pow(1L - ctx.p));
      const Series s = e_u2_series(tw, ctx.D);
      const auto rep = overconvergence_report(s, 64, ctx.D);
      maybe_csv(opt, "e-u2_v" + std::to_string(v), s);
      const Series prod = s * s.substitute_neg();
      const bool sym = series_equal(prod, Series::one(tw.L, ctx.D));
      r.details = {{"u", residue_code(tw.u)},
                   {"integral_up_to", rep.integral_up_to},
                   {"slope", rep.slope},
                   {"slope_uniformizer_units", rep.slope * tw.L->e()},
                   {"window", {rep.n0, rep.n1}},
                   {"E(X)E(-X)=1", sym}};
      r.status = verdict(rep.integral_up_to == ctx.D && rep.slope > 0 && sym);
    }));
    cs.push_back(make_case("e-u2", "kummer/" + vcode(v), [ctx, v](Record& r) {
      ExpWorkbench wb(ctx);
      const KummerReport k = kummer_generator_check(wb, teichmuller_lift(wb.K(), v));
      r.residual = static_cast<double>(k.residual);
      r.details = {{"witness_valuation", k.witness_valuation}, {"rigor", k.rigor}, {"D", k.D}};
      r.status = verdict(k.pass);
    }));
  }
  return cs;
}

std::vector<Case> e_un_suite(const RunOptions& opt) {
  const PrecisionContext ctx = with_guard(opt.ctx);
  std::vector<Case> cs;
  for (int n : {1, 2})
    for (int u = 1; u < ctx.p; ++u) {
      cs.push_back(make_case("e-un", "n=" + std::to_string(n) + "/u=" + std::to_string(u), [ctx, opt, n, u](Record& r) {
        auto K = Ring::unramified(ctx);
        const CoherentRoots cr = coherent_roots(K, teichmuller_lift(K, u), n + 1);
        const Series s = e_un_series(cr, n, ctx.D);
        const auto rep = overconvergence_report(s, 64, ctx.D);
        maybe_csv(opt, "e-un_n" + std::to_string(n) + "_u" + std::to_string(u), s);
        const auto f = e_un_factorization(cr, n, ctx.D);
        r.residual = std::floor(static_cast<double>(f.min_precision) / cr.R->e());
        r.details = {{"integral_up_to", rep.integral_up_to},
                     {"slope", rep.slope},
                     {"factorization_margin", f.residual_margin},
                     {"lambda_topologically_nilpotent", f.lambda_topologically_nilpotent}};
        r.status = verdict(rep.integral_up_to == ctx.D && rep.slope > 0 && f.residual_margin >= 0 &&
                           f.lambda_topologically_nilpotent);
      }));
    }
  return cs;
}

std::vector<Case> witt_suite(const RunOptions& opt) {
  const PrecisionContext ctx = opt.ctx;
  const unsigned seed = opt.seed;
  std::vector<Case> cs;
  cs.push_back(make_case("witt", "ghost-roundtrip", [ctx, seed](Record& r) {
    auto K = Ring::unramified(ctx.p, ctx.d, 30);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> dist(0, 1000000);
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
      WittVector w;
      for (int i = 0; i < 4; ++i) {
        Element x = K->zero(), g = K->one();
        for (int j = 0; j < ctx.d; ++j, g *= K->generator()) x += K->from_int(dist(rng)) * g;
        w.push_back(x);
      }
      const WittVector back = unghost(ghost(w));
      bool same = true;
      for (int i = 0; i < 4; ++i) same = same && equal_to_precision(back[i], w[i]);
      ok += same;
    }
    r.details = {{"trials", 200}, {"exact", ok}};
    r.status = verdict(ok == 200);
  }));
  for (int u : {1, ctx.p - 1}) {
    cs.push_back(make_case("witt", "bracket/u=" + std::to_string(u), [ctx, u](Record& r) {
      auto K = Ring::unramified(ctx.p, ctx.d, 16);
      const Element uu = teichmuller_lift(K, u);
      const int n = 3;
      const CoherentRoots cr = coherent_roots(K, uu, n);
      const auto lam = bracket_map({K->zero(), K->one()}, cr.omega[n], uu, n + 1);
      const auto g = ghost(lam);
      double worst = 1e9;
      for (int i = 0; i <= n; ++i) worst = std::min(worst, digits(g[i] - cr.omega[n - i]));
      r.residual = worst;
      r.status = verdict(worst >= 8);
    }));
  }
  const std::pair<const char*, int> a0s[] = {{"unit", 0}, {"p", 1}, {"p^2", 2}, {"0", -1}};
  for (auto [name, k] : a0s) {
    cs.push_back(make_case("witt", std::string("unit-pattern/a0=") + name, [ctx, k](Record& r) {
      auto K = Ring::unramified(ctx.p, ctx.d, 16);
      const CoherentRoots cr = coherent_roots(K, K->one(), 4);
      const Element a0 = k < 0 ? K->zero() : K->from_int(2).mul_p_power(k);
      const auto res = unit_pattern_check({a0, K->one(), K->from_int(ctx.p + 1)}, cr.omega[4], K->one(), 4);
      json units = json::array();
      for (bool b : res.unit) units.push_back(b);
      r.details = {{"unit_components", units}, {"first_unit", res.r ? json(*res.r) : json(nullptr)}};
      r.status = verdict(res.consistent && (k < 0 ? !res.r : (res.r && *res.r == k)));
    }));
  }
  cs.push_back(make_case("witt", "artin-hasse-integrality", [ctx](Record& r) {
    auto K = Ring::unramified(ctx.p, ctx.d, 40);
    const CoherentRoots cr = coherent_roots(K, K->one(), 3);
    Poly h(ctx.p, K->zero());
    h[ctx.p - 1] = K->one();
    const auto lam = witt_mul(bracket_map({K->zero(), K->one()}, cr.omega[3], K->one(), 3),
                              bracket_map(h, cr.omega[3], K->one(), 3));
    const Series E = artin_hasse_relative(lam, 64);
    r.details = {{"D", E.cap()}};
    r.status = "pass";
  }));
  return cs;
}

std::vector<Case> self_dual_suite(const RunOptions& opt) {
  const PrecisionContext ctx = with_guard(opt.ctx);
  std::vector<Case> cs;
  const FiniteField k(ctx.p, ctx.d);
  for (int v : projective_points(k)) {
    cs.push_back(make_case("self-dual", vcode(v), [ctx, v](Record& r) {
      ExpWorkbench wb(ctx);
      const Element vv = teichmuller_lift(wb.K(), v);
      SelfDualReport rep = self_dual_generator(wb, vv);
      conjugate_crosscheck(wb, vv, rep);
      r.residual = static_cast<double>(rep.gram_digits);
      r.details = {{"alpha_valuation", rep.alpha_valuation},
                   {"different_valuation", rep.different_valuation},
                   {"gram_symmetric", rep.gram_symmetric},
                   {"gram_circulant", rep.gram_circulant},
                   {"involution", rep.involution},
                   {"conjugate_set_digits", rep.set_match_digits},
                   {"rigor", rep.rigor},
                   {"D", wb.ctx().D}};
      r.status = verdict(rep.pass && rep.set_match_digits >= 8);
    }));
  }
  return cs;
}

std::vector<Case> norm_group_suite(const RunOptions& opt) {
  const PrecisionContext ctx = opt.ctx;
  std::vector<Case> cs;
  const FiniteField k(ctx.p, ctx.d);
  for (int v : projective_points(k))
    for (int w = 1; w < k.q(); ++w) {
      const std::string id = vcode(v) + ",w=" + std::to_string(w);
      cs.push_back(make_case("norm-group", "literal/" + id, [ctx, v, w](Record& r) {
        auto K = Ring::unramified(ctx.p, ctx.d, 6);
        const auto rep = norm_identity_check(K, v, w);
        r.residual = static_cast<double>(rep.literal_residual);
        r.details = {{"negated_residual", rep.negated_residual}, {"corrected_residual", rep.corrected_residual}};
        r.status = verdict(rep.literal_pass());
      }));
      cs.push_back(make_case("norm-group", "corrected/" + id, [ctx, v, w](Record& r) {
        auto K = Ring::unramified(ctx.p, ctx.d, 6);
        const auto rep = norm_identity_check(K, v, w);
        r.residual = static_cast<double>(rep.corrected_residual);
        r.status = verdict(rep.corrected_pass());
      }));
    }
  cs.push_back(make_case("norm-group", "z-membership", [ctx](Record& r) {
    auto K = Ring::unramified(ctx.p, ctx.d, 10);
    const Element eta = normal_basis_eta(K);
    bool ok = z_membership(K->from_int(ctx.p));
    ok = ok && z_membership(K->one()) == (ctx.d % ctx.p == 0);
    if (ctx.d >= 2) ok = ok && z_membership(eta.pow(static_cast<long>(ctx.p)) - eta.pow(static_cast<long>(ctx.p) * ctx.p));
    r.status = verdict(ok);
  }));
  cs.push_back(make_case("norm-group", "eta-decomposition", [ctx](Record& r) {
    auto K = Ring::unramified(ctx.p, ctx.d, 10);
    const Element eta = normal_basis_eta(K);
    const Element det = decomposition_determinant(eta);
    r.details = {{"eta", residue_code(eta)}, {"det_valuation", det.valuation()}};
    r.status = verdict(det.is_unit());
  }));
  cs.push_back(make_case("norm-group", "unit-group", [ctx](Record& r) {
    const auto u = unit_group_decomposition(ctx.p, ctx.d);
    r.details = {{"generated", u.generated}, {"classes", u.classes}, {"expected", u.expected}};
    r.status = verdict(u.pass());
  }));
  cs.push_back(make_case("norm-group", "wreath-model", [ctx](Record& r) {
    const auto w = wreath_model(ctx.p, ctx.d);
    r.details = {{"order", w.order}, {"expected", w.expected}, {"relations", w.relations}};
    r.status = verdict(w.relations && w.order == w.expected);
  }));
  return cs;
}

std::vector<Case> classfield_suite(const RunOptions& opt) {
  const PrecisionContext ctx = opt.ctx;
  const unsigned seed = opt.seed;
  std::vector<Case> cs;
  const FiniteField k(ctx.p, ctx.d);
  for (int v : projective_points(k)) {
    cs.push_back(make_case("classfield", "correspondence/" + vcode(v), [ctx, v](Record& r) {
      const FiniteField kk(ctx.p, ctx.d);
      const auto ker = trace_kernel(kk, v);
      int same = 0;
      for (int w : projective_points(kk)) same += trace_kernel(kk, w) == ker;
      r.details = {{"kernel", ker}, {"kernel_size", ker.size()}};
      r.status = verdict(same == 1 && static_cast<int>(ker.size()) == kk.q() / kk.p());
    }));
  }
  cs.push_back(make_case("classfield", "lines", [ctx, seed](Record& r) {
    const FiniteField kk(ctx.p, ctx.d);
    const auto pts = projective_points(kk);
    if (pts.size() < 2) {
      r.status = "skip";
      r.details["reason"] = "P(k) is a single point";
      return;
    }
    bool ok = true;
    long triples = 0;
    for (int a : pts)
      for (int b : pts)
        if (a != b) ok = ok && static_cast<int>(line_points(kk, a, b).size()) == kk.p() + 1;
    const std::size_t n = pts.size();
    if (n * n * n <= 5000) {
      for (int a : pts)
        for (int b : pts)
          for (int c : pts)
            if (a != b) {
              ok = ok && line_containment(kk, c, a, b).agree();
              ++triples;
            }
    } else {
      std::mt19937 rng(seed);
      while (triples < 500) {
        const int a = pts[rng() % n], b = pts[rng() % n], c = pts[rng() % n];
        if (a == b) continue;
        ok = ok && line_containment(kk, c, a, b).agree();
        ++triples;
      }
    }
    r.details = {{"triples", triples}};
    r.status = verdict(ok);
  }));
  cs.push_back(make_case("classfield", "frobenius-equivariance", [ctx](Record& r) {
    const auto e = frobenius_equivariance(FiniteField(ctx.p, ctx.d));
    r.details = {{"fixed_by_kernel", e.fixed_by_kernel}, {"fixed_by_power", e.fixed_by_power}};
    r.status = verdict(e.equivariant && e.fixed_match());
  }));
  cs.push_back(make_case("classfield", "lubin-tate", [ctx](Record& r) {
    auto K = Ring::unramified(ctx.p, ctx.d, ctx.N + 40);
    const Element eta = normal_basis_eta(K);
    const Element a = K->one() - eta.mul_int(ctx.p);
    const int D = std::min(ctx.D, 32);
    const Series f = lubin_tate_endo(a, D);
    const long res = lubin_tate_residual(f);
    const Series one = lubin_tate_endo(K->one(), D);
    const bool identity = series_equal(one, Series::monomial(K->one(), 1, D));
    const int D2 = std::min(ctx.D, 16);
    const Element b = K->from_int(2) + eta;
    const bool comp =
        series_equal(lubin_tate_endo(a, D2).compose(lubin_tate_endo(b, D2)), lubin_tate_endo(a * b, D2));
    long prec = f[D].precision();
    r.residual = static_cast<double>(prec);
    r.details = {{"D", D}, {"residual_margin", res}, {"[1]=X", identity}, {"composition", comp}};
    r.status = verdict(res >= 0 && prec >= ctx.N && identity && comp);
  }));
  return cs;
}

std::vector<Case> frobenius_suite(const RunOptions& opt) {
  const PrecisionContext ctx = opt.ctx;
  std::vector<Case> cs;
  for (int n : {1, 2})
    for (int u = 1; u < ctx.p; ++u) {
      cs.push_back(make_case("frobenius", "n=" + std::to_string(n) + "/u=" + std::to_string(u), [ctx, n, u](Record& r) {
        auto K = Ring::unramified(ctx.p, ctx.d, 4);
        const auto rep = verify_frobenius_structure(ctx, teichmuller_lift(K, u), n);
        r.residual = static_cast<double>(rep.residual_digits);
        r.details = {{"D", rep.D}, {"N", rep.N}};
        r.status = verdict(rep.pass);
      }));
    }
  return cs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dwork",     "e-u2",       "e-un",       "witt",
                                              "self-dual", "norm-group", "classfield", "frobenius"};
  return names;
}

std::vector<Case> build_suite(const std::string& name, const RunOptions& opt) {
  if (name == "all") {
    std::vector<Case> out;
    for (const auto& n : suite_names()) {
      auto cs = build_suite(n, opt);
      out.insert(out.end(), cs.begin(), cs.end());
    }
    return out;
  }
  if (name == "dwork") return dwork_suite(opt);
  if (name == "e-u2") return e_u2_suite(opt);
  if (name == "e-un") return e_un_suite(opt);
  if (name == "witt") return witt_suite(opt);
  if (name == "self-dual") return self_dual_suite(opt);
  if (name == "norm-group") return norm_group_suite(opt);
  if (name == "classfield") return classfield_suite(opt);
  if (name == "frobenius") return frobenius_suite(opt);
  throw Error(Errc::ConfigError, "unknown suite '" + name + "'");
}

std::vector<Case> explore_sigma_alpha_cases(const RunOptions& opt) {
  const PrecisionContext ctx = with_guard(opt.ctx);
  std::vector<Case> cs;
  const FiniteField k(ctx.p, ctx.d);
  for (int v : projective_points(k)) {
    cs.push_back(make_case("explore-sigma-alpha", vcode(v), [ctx, v](Record& r) {
      r.informational = true;
      ExpWorkbench wb(ctx);
      const auto rows = explore_sigma_alpha(wb, teichmuller_lift(wb.K(), v));
      json arr = json::array();
      for (const auto& row : rows) arr.push_back({{"alignment", row.alignment}, {"agreement_digits", row.agreement_digits}});
      r.details = {{"u", residue_code(teichmuller_lift(wb.K(), v).pow(1L - ctx.p))}, {"alignments", arr}};
      r.status = "info";
    }));
  }
  return cs;
}

std::vector<Record> run_cases(const std::vector<Case>& cases, int threads,
                              const std::function<void(const Record&)>& sink) {
  const std::size_t n = cases.size();
  std::vector<std::optional<Record>> done(n);
  std::mutex m;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= n) return;
      Record r = cases[i].run();
      {
        std::lock_guard lock(m);
        done[i] = std::move(r);
      }
      cv.notify_all();
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  std::vector<Record> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock lock(m);
    cv.wait(lock, [&] { return done[i].has_value(); });
    out.push_back(*done[i]);
    lock.unlock();
    if (sink) sink(out.back());
  }
  for (auto& t : pool) t.join();
  return out;
}

void write_series_csv(const PrecisionContext& ctx_in, const std::string& which, int u_index, const std::string& path) {
  const PrecisionContext ctx = with_guard(ctx_in);
  auto K = Ring::unramified(ctx);
  Series s;
  if (which == "dwork") {
    s = dwork_series(build_tower(K, K->one()), ctx.D);
  } else if (which == "e-u2") {
    const auto pts = projective_points(FiniteField(ctx.p, ctx.d));
    if (u_index < 0 || u_index >= static_cast<int>(pts.size()))
      throw Error(Errc::ConfigError, "u-index out of range (P(k) has " + std::to_string(pts.size()) + " points)");
    const Element v = teichmuller_lift(K, pts[u_index]);
    s = e_u2_series(build_tower(K, v.pow(1L - ctx.p)), ctx.D);
  } else if (which == "e-un") {
    if (u_index < 0 || u_index >= ctx.p - 1) throw Error(Errc::ConfigError, "u-index out of range for mu_{p-1}");
    s = e_un_series(coherent_roots(K, teichmuller_lift(K, u_index + 1), 2), 2, ctx.D);
  } else {
    throw Error(Errc::ConfigError, "unknown series '" + which + "'");
  }
  if (path == "-") {
    write_valuation_csv(std::cout, s);
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error(Errc::ConfigError, "cannot open " + path);
  write_valuation_csv(os, s);
}

}  // namespace lt
