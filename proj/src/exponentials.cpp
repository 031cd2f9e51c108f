#include "lt/exponentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lt/error.hpp"
#include "lt/finite_field.hpp"
#include "lt/padic.hpp"

namespace lt {

Series dwork_exponent(const Tower& tw, int D) {
  const int p = tw.K->p();
  Series f(tw.Kp, D);
  f.set(1, tw.gamma());
  if (p <= D) f.set(p, -tw.gamma());
  return f;
}

Series dwork_series(const Tower& tw, int D) { return series_exp(dwork_exponent(tw, D)); }

Series e_u2_exponent(const Tower& tw, int D) {
  const int p = tw.K->p();
  const RingPtr& L = tw.L;
  const Element w = tw.omega();
  const Element uL = L->embed(tw.u);
  const Element gp = tw.Kp_to_L(tw.gamma()).mul_p_power(-1);  // gamma / p
  Series f(L, D);
  f.set(1, w);
  if (p <= D) f.set(p, gp - uL * w);
  if (p * p <= D) f.set(p * p, -gp);
  return f;
}

Series e_u2_series(const Tower& tw, int D) { return series_exp(e_u2_exponent(tw, D)); }

CoherentRoots coherent_roots(const RingPtr& K, const Element& u, int depth) {
  if (depth < 1) throw Error(Errc::CheckFailed, "depth must be >= 1");
  if (!u.is_unit()) throw Error(Errc::NotAUnit, "u must be a unit");
  const int p = K->p();
  const Poly f = lubin_tate_poly(u);
  Poly it{K->zero(), K->one()};  // X
  for (int i = 1; i < depth; ++i) {
    // f(it) = it^p + u p it
    Poly nx = poly_pow(it, p);
    Poly lin = it;
    for (auto& c : lin) c *= u.mul_int(p);
    it = poly_add(nx, lin);
  }
  Poly F = poly_pow(it, p - 1);
  F[0] += u.mul_int(p);
  CoherentRoots cr;
  cr.K = K;
  cr.u = u;
  cr.depth = depth;
  cr.R = eisenstein_from_poly(K, F, "R_" + std::to_string(depth));
  const Poly fR = poly_embed(f, cr.R);
  cr.omega.assign(depth + 1, cr.R->zero());
  cr.omega[depth] = cr.R->uniformizer();
  for (int m = depth - 1; m >= 0; --m) cr.omega[m] = poly_eval(fR, cr.omega[m + 1]);
  if (!cr.omega[0].is_zero()) throw Error(Errc::CheckFailed, "f_u^depth(omega_depth) != 0");
  return cr;
}

Series e_un_exponent(const CoherentRoots& cr, int n, int D) {
  if (n < 1 || n > cr.depth) throw Error(Errc::CheckFailed, "E_{u,n} needs 1 <= n <= depth");
  const RingPtr& R = cr.R;
  const Element uR = R->embed(cr.u);
  Series f(R, D);
  long pi = 1;
  for (int i = 0; i < n; ++i, pi *= R->p()) {
    const Element c = cr.omega[n - i].mul_p_power(-i);
    if (pi <= D) f.set(static_cast<int>(pi), f[static_cast<int>(pi)] + c);
    if (pi * R->p() <= D) f.set(static_cast<int>(pi * R->p()), f[static_cast<int>(pi * R->p())] - uR * c);
  }
  return f;
}

Series e_un_series(const CoherentRoots& cr, int n, int D) { return series_exp(e_un_exponent(cr, n, D)); }

FactorizationResult e_un_factorization(const CoherentRoots& cr, int n, int D) {
  if (cr.depth < n + 1) throw Error(Errc::CheckFailed, "factorization needs omega_{n+1}");
  const RingPtr& R = cr.R;
  const int p = R->p();
  const Element& w = cr.omega[n + 1];
  const Poly hx{cr.K->zero(), cr.K->one()};
  Poly hh(p, cr.K->zero());  // f_u(X)/X - u p = X^{p-1}
  hh[p - 1] = cr.K->one();
  const WittVector bw = bracket_map(hx, w, cr.u, n + 1);
  const WittVector bh = bracket_map(hh, w, cr.u, n + 1);
  const WittVector lam = witt_mul(bw, bh);
  FactorizationResult res;
  res.lambda_topologically_nilpotent =
      std::none_of(bh.begin(), bh.end(), [](const Element& x) { return x.is_unit(); });
  const Series E = e_un_series(cr, n, D);
  const Series A = artin_hasse_relative(lam, D);
  const Series ex = series_exp(Series::monomial(R->embed(cr.u).mul_int(p) * w, 1, D));
  const Series rhs = ex * A;
  res.residual_margin = std::numeric_limits<long>::max();
  res.min_precision = std::numeric_limits<long>::max();
  for (int k = 0; k <= D; ++k) {
    const Element diff = E[k] - rhs[k];
    res.min_precision = std::min(res.min_precision, diff.precision());
    res.residual_margin = std::min(res.residual_margin, diff.valuation() - diff.precision());
  }
  return res;
}

int smallest_primitive_root(int p) {
  for (int g = 2; g < p; ++g) {
    int x = 1, order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 1;  // p = 2
}

// ---------------------------------------------------------------------------

ExpWorkbench::ExpWorkbench(PrecisionContext ctx, int D_max) : ctx_(ctx), D_max_(std::max(D_max, ctx.D)) {
  ctx_.guard = std::max(ctx_.guard, PrecisionContext::min_guard(ctx_.p, ctx_.D));
  K_ = Ring::unramified(ctx_);
}

void ExpWorkbench::grow() {
  if (2 * ctx_.D > D_max_) throw Error(Errc::TailNotBounded, "series degree limit reached");
  ctx_.D *= 2;
  ctx_.guard = std::max(ctx_.guard, PrecisionContext::min_guard(ctx_.p, ctx_.D));
  K_ = Ring::unramified(ctx_);
  towers_.clear();
}

const Tower& ExpWorkbench::tower(const Element& u) {
  const int code = residue_code(u);
  for (auto& [c, t] : towers_)
    if (c == code) return t;
  towers_.emplace_back(code, build_tower(K_, teichmuller_lift(K_, code)));
  return towers_.back().second;
}

namespace {

template <class Make>
CertifiedValue certify_with_growth(ExpWorkbench& wb, Make make) {
  for (;;) {
    try {
      auto [series, x] = make();
      Evaluation ev = evaluate_at_unit(series, x, wb.ctx().N);
      if (ev.tail.rigor == "certified") return {ev.value, ev.tail, wb.ctx().D};
      try {
        wb.grow();
      } catch (const Error&) {
        return {ev.value, ev.tail, wb.ctx().D};
      }
    } catch (const Error& e) {
      if (e.code() != Errc::TailNotBounded) throw;
      wb.grow();
    }
  }
}

}  // namespace

CertifiedValue ExpWorkbench::e_u2_at(const Element& v) {
  const int code = residue_code(v);
  return certify_with_growth(*this, [&] {
    const Element vv = teichmuller_lift(K_, code);
    const int p = ctx_.p;
    const Tower& tw = tower(vv.pow(1L - p));
    return std::pair{e_u2_series(tw, ctx_.D), tw.L->embed(vv)};
  });
}

CertifiedValue ExpWorkbench::dwork_at(const Element& x) {
  const int code = residue_code(x);
  return certify_with_growth(*this, [&] {
    const Element xx = teichmuller_lift(K_, code);
    const Tower& tw = tower(K_->one());
    return std::pair{dwork_series(tw, ctx_.D), tw.Kp->embed(xx)};
  });
}

namespace {

long digits_of(const Element& x) { return static_cast<long>(std::floor(static_cast<double>(x.valuation()) / x.ring()->e())); }

}  // namespace

KummerReport kummer_generator_check(ExpWorkbench& wb, const Element& v_in) {
  const int code = residue_code(v_in);
  const int p = wb.ctx().p;
  KummerReport rep;
  for (;;) {
    const int D0 = wb.ctx().D;
    const Element v = teichmuller_lift(wb.K(), code);
    CertifiedValue a = wb.e_u2_at(v);
    CertifiedValue b = wb.dwork_at(v.pow(static_cast<long>(p)));
    if (wb.ctx().D != D0) continue;
    const Tower& tw = wb.tower(v.pow(1L - p));
    const Element lhs = a.value.pow(static_cast<long>(p));
    const Element rhs = tw.Kp_to_L(b.value);
    rep.residual = digits_of(lhs - rhs);
    rep.witness_valuation = (b.value - tw.Kp->one()).valuation();
    rep.rigor = (a.tail.rigor == "certified" && b.tail.rigor == "certified") ? "certified" : "heuristic";
    rep.D = wb.ctx().D;
    rep.pass = rep.residual >= wb.ctx().N - 2 && rep.witness_valuation == 1;
    return rep;
  }
}

namespace {

struct AlphaParts {
  std::vector<Element> powers;  // E^{s_k}, s_k = Teichmuller lift of z^k
  std::vector<int> residues;  // z^k mod p
  Element E;
};

// E^s for s in mu_{p-1}: E is a p^j-th root of unity to precision for some j,
// so s may be reduced modulo p^j.
AlphaParts alpha_parts(const Element& E, int p, int digits) {
  AlphaParts parts;
  parts.E = E;
  const RingPtr& L = E.ring();
  int j = 0;
  Element pw = E;
  while (!equal_to_precision(pw, L->one())) {
    pw = pw.pow(static_cast<long>(p));
    if (++j > 64) throw Error(Errc::CheckFailed, "E is not a root of unity of p-power order to precision");
  }
  auto Zp = Ring::unramified(p, 1, std::max(digits, j + 1));
  const int z = smallest_primitive_root(p);
  int r = 1;
  for (int k = 0; k < p - 1; ++k) {
    const Element s = teichmuller_lift(Zp, r);
    mpz_class sj = s.stored()[0] % Zp->ppow(j);
    parts.powers.push_back(E.pow(sj));
    parts.residues.push_back(r);
    r = r * z % p;
  }
  return parts;
}

}  // namespace

SelfDualReport self_dual_generator(ExpWorkbench& wb, const Element& v_in) {
  const int code = residue_code(v_in);
  const int p = wb.ctx().p;
  SelfDualReport rep;
  CertifiedValue ev, evn;
  for (;;) {
    const int D0 = wb.ctx().D;
    const Element v = teichmuller_lift(wb.K(), code);
    ev = wb.e_u2_at(v);
    evn = wb.e_u2_at(-v);
    if (wb.ctx().D == D0) break;
  }
  const Element v = teichmuller_lift(wb.K(), code);
  const Tower& tw = wb.tower(v.pow(1L - p));
  rep.rigor = (ev.tail.rigor == "certified" && evn.tail.rigor == "certified") ? "certified" : "heuristic";
  const AlphaParts parts = alpha_parts(ev.value, p, wb.K()->digits());
  Element sum = tw.L->one();
  for (const auto& x : parts.powers) sum += x;
  const Element alphaL = sum.mul_p_power(-1);
  rep.alpha = express_in_subfield(tw, alphaL);
  rep.alpha_valuation = rep.alpha.valuation();

  const Poly dpsi = poly_derivative(poly_embed(tw.psi(), tw.M));
  rep.different_valuation = poly_eval(dpsi, tw.t()).valuation();

  // conjugates in cyclic order under tau: t -> second root
  const auto roots = hensel_conjugates(tw);
  const RingHom tau(tw.M, tw.M, roots[1]);
  rep.conjugates.push_back(rep.alpha);
  for (int j = 1; j < p; ++j) rep.conjugates.push_back(tau(rep.conjugates.back()));

  const RelativeStructure MK(tw.K_to_M);
  const RingPtr& K = tw.K;
  rep.gram.assign(p, std::vector<Element>(p, K->zero()));
  rep.gram_digits = std::numeric_limits<long>::max();
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      const Element g = MK.trace(rep.conjugates[i] * rep.conjugates[j]);
      rep.gram[i][j] = g;
      rep.gram[j][i] = g;
      const Element want = i == j ? K->one() : K->zero();
      rep.gram_digits = std::min(rep.gram_digits, (g - want).valuation());
    }
  rep.gram_symmetric = true;
  rep.gram_circulant = true;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      rep.gram_symmetric = rep.gram_symmetric && equal_to_precision(rep.gram[i][j], rep.gram[j][i]);
      rep.gram_circulant =
          rep.gram_circulant && equal_to_precision(rep.gram[i][j], rep.gram[(i + 1) % p][(j + 1) % p]);
    }

  const Element& E = ev.value;
  const bool neg = equal_to_precision(E * evn.value, tw.L->one());
  const bool half = equal_to_precision(E * parts.powers[(p - 1) / 2], tw.L->one());
  rep.involution = neg && half;

  rep.pass = rep.gram_digits >= 8 && rep.alpha_valuation == -(p - 1) && rep.different_valuation == 2 * (p - 1) &&
             rep.gram_symmetric && rep.gram_circulant && rep.involution;
  return rep;
}

void conjugate_crosscheck(ExpWorkbench& wb, const Element& v_in, SelfDualReport& rep) {
  const int code = residue_code(v_in);
  const int p = wb.ctx().p;
  CertifiedValue ev, zeta;
  for (;;) {
    const int D0 = wb.ctx().D;
    ev = wb.e_u2_at(teichmuller_lift(wb.K(), code));
    zeta = wb.dwork_at(wb.K()->one());
    if (wb.ctx().D == D0) break;
  }
  const Element v = teichmuller_lift(wb.K(), code);
  const Tower& tw = wb.tower(v.pow(1L - p));
  const AlphaParts parts = alpha_parts(ev.value, p, wb.K()->digits());
  const Element z = tw.Kp_to_L(zeta.value);
  std::vector<Element> model;
  for (int j = 0; j < p; ++j) {
    Element s = tw.L->one();
    for (std::size_t k = 0; k < parts.powers.size(); ++k)
      s += z.pow(static_cast<long>(j) * parts.residues[k]) * parts.powers[k];
    model.push_back(s.mul_p_power(-1));
  }
  // Hensel conjugates, re-derived in the current rings
  std::vector<Element> hensel;
  for (const auto& c : rep.conjugates) {
    if (!c.ring()->equivalent(*tw.M)) throw Error(Errc::RingMismatch, "stale conjugates");
    hensel.push_back(tw.M_to_L(c));
  }
  const double e = tw.L->e();
  long worst = std::numeric_limits<long>::max();
  std::vector<bool> used(p, false);
  for (const auto& m : model) {
    long best = std::numeric_limits<long>::min();
    int bi = -1;
    for (int i = 0; i < p; ++i) {
      const long r = (m - hensel[i]).valuation();
      if (r > best) {
        best = r;
        bi = i;
      }
    }
    if (used[bi]) throw Error(Errc::SetMismatch, "two twisted conjugates match the same Hensel conjugate");
    used[bi] = true;
    worst = std::min(worst, static_cast<long>(std::floor(best / e)));
  }
  rep.set_match_digits = worst;
}

}  // namespace lt

namespace lt {

std::vector<SigmaAlignmentRow> explore_sigma_alpha(ExpWorkbench& wb, const Element& v_in) {
  const int code = residue_code(v_in);
  const int p = wb.ctx().p;
  SelfDualReport a, b;
  for (;;) {
    const int D0 = wb.ctx().D;
    const Element v = teichmuller_lift(wb.K(), code);
    a = self_dual_generator(wb, v);
    b = self_dual_generator(wb, v.pow(static_cast<long>(p)));
    if (wb.ctx().D == D0) break;
  }
  const Element v = teichmuller_lift(wb.K(), code);
  const Tower& tb = wb.tower(v.pow(static_cast<long>(p)).pow(1L - p));
  const auto roots = hensel_conjugates(tb);
  const int frob = wb.K()->d() > 1 ? 1 : 0;
  const double e = tb.M->e();
  std::vector<SigmaAlignmentRow> rows;
  for (int j = 0; j < static_cast<int>(roots.size()); ++j) {
    const RingHom s(a.alpha.ring(), tb.M, roots[j], frob);
    const Element diff = s(a.alpha) - b.alpha;
    rows.push_back({j, static_cast<long>(std::floor(std::min(diff.valuation(), diff.precision()) / e))});
  }
  return rows;
}

}  // namespace lt
