#include "lt/witt.hpp"

#include "lt/error.hpp"

namespace lt {

std::vector<Element> ghost(const WittVector& w) {
  std::vector<Element> g;
  if (w.empty()) return g;
  const RingPtr& R = w[0].ring();
  const int p = R->p();
  // powers[i] = lambda_i^{p^{n-i}} for the current n
  std::vector<Element> powers(w.begin(), w.end());
  for (std::size_t n = 0; n < w.size(); ++n) {
    Element acc = R->zero();
    for (std::size_t i = 0; i <= n; ++i) acc += powers[i].mul_p_power(static_cast<int>(i));
    g.push_back(acc);
    for (std::size_t i = 0; i <= n; ++i) powers[i] = powers[i].pow(static_cast<long>(p));
  }
  return g;
}

WittVector unghost(const std::vector<Element>& g) {
  WittVector w;
  if (g.empty()) return w;
  const RingPtr& R = g[0].ring();
  const int p = R->p();
  std::vector<Element> powers;
  for (std::size_t n = 0; n < g.size(); ++n) {
    Element rest = g[n];
    for (std::size_t i = 0; i < n; ++i) rest -= powers[i].mul_p_power(static_cast<int>(i));
    Element lam = rest.mul_p_power(-static_cast<int>(n));
    if (!lam.is_integral() && !lam.is_zero())
      throw Error(Errc::NotInGhostImage, "component " + std::to_string(n) + " has valuation " +
                                             std::to_string(lam.valuation()));
    w.push_back(lam);
    powers.push_back(lam);
    for (auto& x : powers) x = x.pow(static_cast<long>(p));
  }
  return w;
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
  if (a.size() != b.size()) throw Error(Errc::RingMismatch, "Witt vectors of different lengths");
  auto ga = ghost(a), gb = ghost(b);
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += gb[i];
  return unghost(ga);
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  if (a.size() != b.size()) throw Error(Errc::RingMismatch, "Witt vectors of different lengths");
  auto ga = ghost(a), gb = ghost(b);
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] *= gb[i];
  return unghost(ga);
}

WittVector bracket_map(const Poly& h, const Element& x, const Element& u, int length) {
  const RingPtr& R = x.ring();
  if (x.is_zero() ? false : x.valuation() < 1) throw Error(Errc::ConvergenceDomain, "bracket map needs v(x) >= 1");
  const Poly hh = poly_embed(h, R);
  const Poly f = poly_embed(lubin_tate_poly(u), R);
  std::vector<Element> g;
  Element y = x;
  for (int i = 0; i < length; ++i) {
    g.push_back(poly_eval(hh, y));
    if (i + 1 < length) y = poly_eval(f, y);
  }
  return unghost(g);
}

Series artin_hasse_relative(const WittVector& lambda, int D) {
  const RingPtr& R = lambda.at(0).ring();
  const int p = R->p();
  auto g = ghost(lambda);
  Series f(R, D);
  long pi = 1;
  for (std::size_t i = 0; i < g.size() && pi <= D; ++i, pi *= p) f.set(static_cast<int>(pi), g[i].mul_p_power(-static_cast<int>(i)));
  Series E = series_exp(f);
  for (int n = 0; n <= D; ++n)
    if (!E[n].is_integral())
      throw Error(Errc::IntegralityViolation, "coefficient " + std::to_string(n) + " of E(lambda, X) has valuation " +
                                                  std::to_string(E[n].valuation()));
  return E;
}

UnitPattern unit_pattern_check(const Poly& h, const Element& x, const Element& u, int length) {
  UnitPattern res;
  auto lam = bracket_map(h, x, u, length);
  for (int i = 0; i < length; ++i) {
    const bool unit = lam[i].is_unit();
    res.unit.push_back(unit);
    if (unit && !res.r) res.r = i;
  }
  const Element& a0 = h.at(0);
  if (!a0.is_zero()) res.vp_a0 = static_cast<int>(a0.valuation() / a0.ring()->e());
  if (res.vp_a0 < 0) {
    res.consistent = !res.r.has_value();
  } else if (res.vp_a0 < length) {
    res.consistent = res.r.has_value() && *res.r == res.vp_a0;
  } else {
    // the unit component lies beyond the computed length
    res.consistent = !res.r.has_value();
  }
  return res;
}

}  // namespace lt
