#include "lt/padic.hpp"

#include <cassert>
#include <cmath>

#include "lt/error.hpp"

namespace lt {

int residue_code(const Element& a) {
  if (!a.is_integral()) throw Error(Errc::IntegralityViolation, "residue of a non-integral element");
  const Ring& R = *a.ring();
  if (!R.is_unramified()) throw Error(Errc::RingMismatch, "residue_code expects an element of O_K");
  int code = 0;
  for (int j = R.d() - 1; j >= 0; --j) {
    mpz_class c;
    mpz_fdiv_r_ui(c.get_mpz_t(), a.stored()[j].get_mpz_t(), R.p());
    code = code * R.p() + static_cast<int>(c.get_si());
  }
  return code;
}

Element from_residue_code(const RingPtr& K, int code) {
  std::vector<mpz_class> c(K->dim(), 0);
  for (int j = 0; j < K->d(); ++j) {
    c[j] = code % K->p();
    code /= K->p();
  }
  return Element(K, std::move(c), K->cap());
}

Element teichmuller_lift(const RingPtr& K, int code) {
  Element t = from_residue_code(K, code);
  if (t.is_zero()) return t;
  mpz_class q = K->ppow(K->d());
  for (int it = 0; it <= K->digits() + 1; ++it) {
    Element next = t.pow(q);
    if (equal_to_precision(next, t)) return next;
    t = next;
  }
  assert(false && "Teichmuller iteration did not stabilize");
  return t;
}

std::vector<Element> teichmuller_units(const RingPtr& K) {
  std::vector<Element> out;
  const int q = static_cast<int>(K->ppow(K->d()).get_si());
  for (int c = 1; c < q; ++c) out.push_back(teichmuller_lift(K, c));
  return out;
}

namespace {

Element eval_modulus(const RingPtr& K, const Element& r, bool derivative) {
  const auto& phi = K->modulus();
  const int d = K->d();
  Element acc = K->zero();
  if (!derivative) {
    acc = K->one();
    for (int j = d - 1; j >= 0; --j) acc = acc * r + K->from_int(phi[j]);
  } else {
    acc = K->from_int(d);
    for (int j = d - 1; j >= 1; --j) acc = acc * r + K->from_int(static_cast<long>(j) * phi[j]);
  }
  return acc;
}

}  // namespace

Element frobenius_generator_image(const RingPtr& K, int k) {
  const int d = K->d();
  k = ((k % d) + d) % d;
  Element x = K->generator();
  if (k == 0 || d == 1) return x;
  // Newton on Phi starting at x^(p^k)
  Element r = x.pow(K->ppow(k));
  for (int it = 0; it < 64; ++it) {
    Element f = eval_modulus(K, r, false);
    if (f.is_zero()) return r;
    r = r - f * eval_modulus(K, r, true).unit_inverse();
  }
  throw Error(Errc::CheckFailed, "Frobenius root did not converge");
}

Element frobenius(const Element& a, int k) {
  const RingPtr& K = a.ring();
  if (!K->is_unramified()) throw Error(Errc::RingMismatch, "frobenius acts on O_K");
  if (K->d() == 1) return a;
  const Element r = frobenius_generator_image(K, k);
  Element acc = K->zero();
  Element pw = K->one();
  for (int j = 0; j < K->d(); ++j) {
    std::vector<mpz_class> c(K->dim(), 0);
    c[0] = a.stored()[j];
    acc += Element(K, std::move(c), a.precision() + a.shift(), 0) * pw;
    pw *= r;
  }
  return acc.mul_p_power(-a.shift()).with_precision(a.precision());
}

Element trace_to_qp(const Element& a) {
  const RingPtr& K = a.ring();
  if (!K->is_unramified()) throw Error(Errc::RingMismatch, "trace_to_qp acts on O_K");
  Element t = K->zero();
  for (int k = 0; k < K->d(); ++k) t += frobenius(a, k);
  for (int j = 1; j < K->d(); ++j)
    if (t.stored()[j] != 0) throw Error(Errc::CheckFailed, "trace not in Z_p");
  auto Zp = Ring::unramified(K->p(), 1, K->digits());
  std::vector<mpz_class> c{t.stored()[0]};
  return Element(Zp, std::move(c), t.precision(), t.shift());
}

Element padic_exp(const Element& x) {
  const Ring& R = *x.ring();
  const long e = R.e();
  const int p = R.p();
  if (x.is_zero()) return R.one().with_precision(x.precision());
  const long v = x.valuation();
  if (v * (p - 1) <= e) throw Error(Errc::ConvergenceDomain, "exp needs v(x) > e/(p-1)");
  Element sum = R.one();
  Element term = R.one();
  for (long n = 1;; ++n) {
    term = (term * x).div_int(n);
    sum += term;
    // every later term has valuation >= m v - e (m-1)/(p-1) >= this bound
    const long m = n + 1;
    const double bound = static_cast<double>(m) * v - static_cast<double>(e) * (m - 1) / (p - 1);
    if (bound >= static_cast<double>(sum.precision())) break;
  }
  return sum;
}

Element padic_log(const Element& y) {
  const Ring& R = *y.ring();
  const long e = R.e();
  const int p = R.p();
  const Element z = y - R.one();
  if (!y.is_integral() || (!z.is_zero() && z.valuation() < 1))
    throw Error(Errc::ConvergenceDomain, "log needs y in 1 + P");
  if (z.is_zero()) return R.zero().with_precision(z.precision());
  const long v = z.valuation();
  Element sum = R.zero();
  Element pw = R.one();
  for (long n = 1;; ++n) {
    pw *= z;
    Element term = pw.div_int(n);
    if (n % 2 == 0) term = -term;
    sum += term;
    // m v - e log_p(m) bounds later terms and increases once m v ln p > e
    const double m = static_cast<double>(n + 1);
    const bool done = m * v - e * std::log(m) / std::log(p) >= static_cast<double>(sum.precision()) &&
                      m * v * std::log(p) > e;
    if (done) break;
  }
  return sum;
}

}  // namespace lt
