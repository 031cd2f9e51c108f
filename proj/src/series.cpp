#include "lt/series.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>

#include "lt/error.hpp"

namespace lt {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

bool exact_zero(const Element& c) { return c.is_zero() && c.precision() >= c.ring()->cap(); }

// Series product by Kronecker substitution: every coefficient becomes a
// block of (2e-1)(2d-1) slots of a single big integer, one GMP product does
// all ring products, and each output block is reduced once.
std::vector<Element> kronecker_mul(const std::vector<Element>& a, const std::vector<Element>& b, int D) {
  const RingPtr& R = a[0].ring();
  const Ring& ring = *R;
  const int e = ring.e(), d = ring.d(), w = 2 * d - 1, W = (2 * e - 1) * w;
  const int na = std::min<int>(a.size() - 1, D), nb = std::min<int>(b.size() - 1, D);

  int Sa = 0, Sb = 0;
  for (int n = 0; n <= na; ++n) Sa = std::max(Sa, a[n].shift());
  for (int n = 0; n <= nb; ++n) Sb = std::max(Sb, b[n].shift());

  auto scaled = [&](const std::vector<Element>& s, int n_max, int S, std::vector<std::vector<mpz_class>>& out,
                    std::size_t& maxbits, std::vector<bool>& nz) {
    out.resize(n_max + 1);
    nz.assign(n_max + 1, false);
    for (int n = 0; n <= n_max; ++n) {
      const auto st = s[n].stored();
      out[n].assign(st.begin(), st.end());
      if (s[n].is_zero()) continue;
      nz[n] = true;
      const int f = S - s[n].shift();
      for (auto& z : out[n]) {
        if (f) z *= ring.ppow(f);
        if (z != 0) maxbits = std::max(maxbits, mpz_sizeinbase(z.get_mpz_t(), 2));
      }
    }
  };
  std::vector<std::vector<mpz_class>> A, B;
  std::vector<bool> nza, nzb;
  std::size_t ba = 1, bb = 1;
  scaled(a, na, Sa, A, ba, nza);
  scaled(b, nb, Sb, B, bb, nzb);

  // per-coefficient precision of the product
  const int Dout = std::min(D, na + nb);
  std::vector<long> prec(Dout + 1, ring.cap());
  std::vector<long> va(na + 1), vb(nb + 1);
  for (int n = 0; n <= na; ++n) va[n] = a[n].valuation();
  for (int n = 0; n <= nb; ++n) vb[n] = b[n].valuation();
  for (int i = 0; i <= na; ++i)
    for (int j = 0; j <= nb && i + j <= Dout; ++j)
      prec[i + j] = std::min({prec[i + j], a[i].precision() + vb[j], b[j].precision() + va[i]});

  const std::size_t terms = static_cast<std::size_t>(std::min(na, nb) + 1) * e * d;
  std::size_t bits = ba + bb + 2;
  for (std::size_t t = terms; t; t >>= 1) ++bits;
  const std::size_t L = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  auto pack = [&](const std::vector<std::vector<mpz_class>>& S, int n_max, mpz_class& Z) {
    const std::size_t total = static_cast<std::size_t>(n_max + 1) * W * L;
    mp_limb_t* limbs = mpz_limbs_write(Z.get_mpz_t(), static_cast<mp_size_t>(total));
    std::memset(limbs, 0, total * sizeof(mp_limb_t));
    for (int n = 0; n <= n_max; ++n)
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < d; ++j) {
          const mpz_class& z = S[n][i * d + j];
          const std::size_t sz = mpz_size(z.get_mpz_t());
          if (!sz) continue;
          const std::size_t off = (static_cast<std::size_t>(n) * W + i * w + j) * L;
          std::memcpy(limbs + off, mpz_limbs_read(z.get_mpz_t()), sz * sizeof(mp_limb_t));
        }
    mpz_limbs_finish(Z.get_mpz_t(), static_cast<mp_size_t>(total));
  };
  mpz_class Za, Zb, Zc;
  pack(A, na, Za);
  pack(B, nb, Zb);
  mpz_mul(Zc.get_mpz_t(), Za.get_mpz_t(), Zb.get_mpz_t());

  const mp_limb_t* cl = mpz_limbs_read(Zc.get_mpz_t());
  const std::size_t csz = mpz_size(Zc.get_mpz_t());
  std::vector<Element> out;
  out.reserve(D + 1);
  std::vector<mpz_class> block(W);
  for (int n = 0; n <= Dout; ++n) {
    if (prec[n] <= 0) throw Error(Errc::PrecisionExhausted, "series product coefficient " + std::to_string(n));
    for (int s = 0; s < W; ++s) {
      const std::size_t off = (static_cast<std::size_t>(n) * W + s) * L;
      mpz_class& z = block[s];
      if (off >= csz) {
        z = 0;
        continue;
      }
      const std::size_t len = std::min(L, csz - off);
      mp_limb_t* dst = mpz_limbs_write(z.get_mpz_t(), static_cast<mp_size_t>(len));
      std::memcpy(dst, cl + off, len * sizeof(mp_limb_t));
      mpz_limbs_finish(z.get_mpz_t(), static_cast<mp_size_t>(len));
    }
    const int shift = Sa + Sb;
    const long T = std::max(1L, ceil_div(prec[n] + static_cast<long>(e) * shift, e));
    auto st = ring.reduce_block(block, static_cast<int>(T));
    block.assign(W, 0);
    out.emplace_back(R, std::move(st), prec[n], shift);
  }
  for (int n = Dout + 1; n <= D; ++n) out.push_back(R->zero());
  return out;
}

}  // namespace

Series::Series(RingPtr R, int D) : ring_(std::move(R)) {
  if (D < 0) throw Error(Errc::DegreeOverflow, "negative series cap");
  c_.assign(D + 1, ring_->zero());
}

Series::Series(std::vector<Element> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(Errc::DegreeOverflow, "empty series");
  ring_ = c_[0].ring();
}

Series Series::one(const RingPtr& R, int D) {
  Series s(R, D);
  s.c_[0] = R->one();
  return s;
}

Series Series::monomial(const Element& c, int n, int D) {
  Series s(c.ring(), D);
  if (n <= D) s.c_[n] = c;
  return s;
}

void Series::set(int n, Element c) { c_.at(n) = std::move(c); }

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series& Series::operator+=(const Series& o) {
  const int D = std::min(cap(), o.cap());
  c_.resize(D + 1);
  for (int n = 0; n <= D; ++n)
    if (!exact_zero(o.c_[n])) c_[n] += o.c_[n];
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series Series::mul(const Series& o) const {
  if (!ring_->equivalent(*o.ring_)) throw Error(Errc::RingMismatch, "series product over different rings");
  const int D = std::min(cap(), o.cap());
  return Series(kronecker_mul(c_, o.c_, D));
}

Series Series::scale(const Element& c) const {
  Series r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

Series Series::truncate(int D) const {
  Series r = *this;
  r.c_.resize(std::min(D, cap()) + 1);
  return r;
}

Series Series::derivative() const {
  Series r = *this;
  for (int n = 0; n <= cap(); ++n) r.c_[n] = c_[n].mul_int(n);
  // keep the precision of the constant term meaningful
  r.c_[0] = ring_->zero();
  return r;
}

Series Series::inverse() const {
  if (!c_[0].is_unit()) throw Error(Errc::NonUnitLeadingTerm, "series inverse needs a unit constant term");
  const int D = cap();
  Series y = Series::monomial(c_[0].unit_inverse(), 0, 0);
  int m = 1;
  while (m <= D) {
    const int m2 = std::min(2 * m, D + 1);
    Series g = truncate(m2 - 1);
    Series yy = Series(y.c_);
    yy.c_.resize(m2, ring_->zero());
    // y <- y + y (1 - g y)
    Series err = Series::one(ring_, m2 - 1) - g * yy;
    yy += yy * err;
    y = yy;
    m = m2;
  }
  return y;
}

Series Series::substitute_power(int m) const {
  if (m < 1) throw Error(Errc::DegreeOverflow, "substitution exponent must be positive");
  Series r(ring_, cap());
  for (int n = 0; static_cast<long>(n) * m <= cap(); ++n) r.c_[n * m] = c_[n];
  return r;
}

Series Series::substitute_neg() const {
  Series r = *this;
  for (int n = 1; n <= cap(); n += 2) r.c_[n] = -r.c_[n];
  return r;
}

Series Series::compose(const Series& g) const {
  if (!g.c_[0].is_zero()) throw Error(Errc::NonzeroConstantTerm, "compose needs g(0) = 0");
  const int D = std::min(cap(), g.cap());
  Series acc = Series::monomial(c_[D], 0, D);
  const Series gt = g.truncate(D);
  for (int n = D - 1; n >= 0; --n) {
    acc = acc * gt;
    acc.c_[0] += c_[n];
  }
  return acc;
}

Series Series::map(const std::function<Element(const Element&)>& f, const RingPtr& target) const {
  std::vector<Element> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(f(c));
  Series r(std::move(out));
  r.ring_ = target;
  return r;
}

Element Series::evaluate(const Element& x) const {
  Element acc = c_.back();
  for (int n = cap() - 1; n >= 0; --n) acc = acc * x + c_[n];
  return acc;
}

bool Series::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Element& c) { return c.is_zero(); });
}

long Series::residual_valuation(const Series& o) const {
  const int D = std::min(cap(), o.cap());
  long v = std::numeric_limits<long>::max();
  for (int n = 0; n <= D; ++n) v = std::min(v, (c_[n] - o.c_[n]).valuation());
  return v;
}

Series series_exp(const Series& f) {
  if (!f[0].is_zero()) throw Error(Errc::NonzeroConstantTerm, "exp needs f(0) = 0");
  const RingPtr& R = f.ring();
  const int D = f.cap();
  std::vector<std::pair<int, Element>> terms;  // k, k f_k
  for (int k = 1; k <= D; ++k)
    if (!exact_zero(f[k])) terms.emplace_back(k, f[k].mul_int(k));
  std::vector<Element> g;
  g.reserve(D + 1);
  g.push_back(R->one());
  for (int n = 1; n <= D; ++n) {
    Element acc = R->zero();
    for (const auto& [k, c] : terms) {
      if (k > n) break;
      acc += c * g[n - k];
    }
    g.push_back(acc.div_int(n));
  }
  return Series(std::move(g));
}

Series series_log(const Series& g) {
  const RingPtr& R = g.ring();
  if (!(g[0] - R->one()).is_zero()) throw Error(Errc::NonzeroConstantTerm, "log needs g(0) = 1");
  Series h = g.derivative() * g.inverse();
  Series out(R, g.cap());
  for (int n = 1; n <= g.cap(); ++n) out.set(n, h[n].div_int(n));
  return out;
}

OverconvergenceReport overconvergence_report(const Series& s, int n0, int n1) {
  OverconvergenceReport r;
  const int D = s.cap();
  n0 = std::clamp(n0, 0, D);
  n1 = std::clamp(n1, n0, D);
  r.n0 = n0;
  r.n1 = n1;
  const double e = s.ring()->e();
  r.integral_up_to = D;
  for (int n = 0; n <= D; ++n)
    if (!s[n].is_zero() && s[n].valuation() < 0) {
      r.integral_up_to = n - 1;
      break;
    }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = n0; n <= n1; ++n) {
    if (s[n].is_zero()) continue;
    const double y = s[n].valuation() / e;
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
    ++cnt;
  }
  if (cnt == 0) {
    r.slope_infinite = true;
    r.slope = std::numeric_limits<double>::infinity();
    return r;
  }
  const double den = cnt * sxx - sx * sx;
  r.slope = cnt > 1 && den != 0 ? (cnt * sxy - sx * sy) / den : 0;
  r.intercept = (sy - r.slope * sx) / cnt;
  return r;
}

TailCertificate certify_tail(const Series& s, double target) {
  const int D = s.cap();
  const double e = s.ring()->e();
  TailCertificate tc;
  auto rep = overconvergence_report(s, D / 2, D);
  if (rep.slope_infinite) {
    tc.rigor = "certified";
    tc.fitted_slope = tc.used_slope = rep.slope;
    tc.bound = std::numeric_limits<double>::infinity();
    return tc;
  }
  tc.fitted_slope = rep.slope;
  if (rep.integral_up_to < D || rep.slope <= 0)
    throw Error(Errc::TailNotBounded, "coefficients not integral through D or slope not positive");
  // line of slope s through the lowest point of the trailing half-window
  auto bound_for = [&](double slope) {
    double b = std::numeric_limits<double>::infinity();
    for (int n = D / 2; n <= D; ++n)
      if (!s[n].is_zero()) b = std::min(b, s[n].valuation() / e - slope * n);
    return std::floor(b) + slope * (D + 1);
  };
  const double half = 0.5 * rep.slope;
  const double certified = bound_for(half);
  if (certified >= target) {
    tc.rigor = "certified";
    tc.used_slope = half;
    tc.bound = certified;
    return tc;
  }
  const double heuristic = bound_for(rep.slope);
  if (heuristic >= target) {
    tc.rigor = "heuristic";
    tc.used_slope = rep.slope;
    tc.bound = heuristic;
    return tc;
  }
  throw Error(Errc::TailNotBounded, "tail bound " + std::to_string(heuristic) + " below target " +
                                        std::to_string(target));
}

Evaluation evaluate_at_unit(const Series& s, const Element& x, double target) {
  if (!x.is_unit()) throw Error(Errc::ConvergenceDomain, "evaluation point must be a unit");
  Evaluation ev;
  ev.tail = certify_tail(s, target);
  Element v = s.evaluate(x);
  const double e = s.ring()->e();
  if (std::isfinite(ev.tail.bound)) {
    const long cap = static_cast<long>(std::floor(ev.tail.bound * e));
    v = v.with_precision(std::max(cap, 1L));
  }
  ev.value = v;
  return ev;
}

void write_valuation_csv(std::ostream& os, const Series& s) {
  const double e = s.ring()->e();
  os << "n,valuation\n";
  for (int n = 0; n <= s.cap(); ++n) os << n << ',' << s[n].valuation() / e << '\n';
}

}  // namespace lt
