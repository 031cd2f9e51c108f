#include "lt/ring.hpp"

#include <algorithm>
#include <sstream>

#include "lt/error.hpp"
#include "lt/finite_field.hpp"

namespace lt {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

int vp(const mpz_class& n, int p) {
  if (n == 0) return 0;
  mpz_class t = n;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Ring

RingPtr Ring::unramified(int p, int d, int digits) {
  auto r = std::shared_ptr<Ring>(new Ring());
  r->p_ = p;
  r->d_ = d;
  r->e_ = 1;
  r->digits_ = digits;
  r->modulus_ = smallest_irreducible(p, d);
  r->ppow_.resize(4 * digits + 64);
  r->ppow_[0] = 1;
  for (std::size_t k = 1; k < r->ppow_.size(); ++k) r->ppow_[k] = r->ppow_[k - 1] * p;
  // E(X) = X - p
  r->eis_.assign(d, 0);
  r->eis_[0] = -r->ppow_[1];
  mpz_mod(r->eis_[0].get_mpz_t(), r->eis_[0].get_mpz_t(), r->ppow_[digits + 1].get_mpz_t());
  r->eis_nonzero_ = {0};
  // p * p^{-1} = 1
  r->pi_inv_.assign(d, 0);
  r->pi_inv_[0] = 1;
  std::ostringstream os;
  os << "Z_" << p;
  if (d > 1) os << "[x]/(deg " << d << ")";
  r->label_ = os.str();
  return r;
}

RingPtr Ring::eisenstein(const RingPtr& base, const std::vector<Element>& lower, std::string label) {
  if (!base->is_unramified()) throw Error(Errc::RingMismatch, "Eisenstein extensions are built over O_K");
  const int e = static_cast<int>(lower.size());
  if (e < 1) throw Error(Errc::CheckFailed, "empty Eisenstein polynomial");
  for (int i = 0; i < e; ++i) {
    if (!lower[i].ring()->equivalent(*base)) throw Error(Errc::RingMismatch, "coefficient not in base ring");
    if (!lower[i].is_integral() || lower[i].valuation() < 1)
      throw Error(Errc::CheckFailed, "coefficient a_" + std::to_string(i) + " not in P_K");
  }
  if (lower[0].valuation() != 1) throw Error(Errc::CheckFailed, "constant term must have valuation 1");

  auto r = std::shared_ptr<Ring>(new Ring());
  r->p_ = base->p_;
  r->d_ = base->d_;
  r->e_ = e;
  r->digits_ = base->digits_;
  r->modulus_ = base->modulus_;
  r->ppow_ = base->ppow_;
  r->base_owner_ = base;
  r->label_ = std::move(label);
  const int d = r->d_;
  const int T = r->digits_ + 1;
  r->eis_.assign(e * d, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < d; ++j) r->eis_[i * d + j] = lower[i].stored()[j];
  for (int i = 0; i < e; ++i)
    if (!lower[i].is_zero()) r->eis_nonzero_.push_back(i);

  // pi^e = p * eps with eps = -sum (a_i / p) pi^i a unit, so p / pi = pi^{e-1} / eps.
  std::vector<mpz_class> eps(e * d, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < d; ++j) {
      mpz_class a = r->eis_[i * d + j];
      mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), r->p_);
      eps[i * d + j] = -a;
      mpz_mod(eps[i * d + j].get_mpz_t(), eps[i * d + j].get_mpz_t(), r->ppow(T).get_mpz_t());
    }
  auto eps_inv = r->raw_unit_inverse(eps, T);
  std::vector<mpz_class> pi_em1(e * d, 0);
  if (e == 1) {
    r->pi_inv_ = eps_inv;
  } else {
    pi_em1[(e - 1) * d] = 1;
    r->mul_raw(pi_em1, eps_inv, r->pi_inv_, T);
  }
  return r;
}

RingPtr Ring::base() const { return base_owner_ ? base_owner_ : shared_from_this(); }

std::vector<Element> Ring::eisenstein_lower() const {
  auto K = base();
  std::vector<Element> out;
  for (int i = 0; i < e_; ++i)
    out.emplace_back(K, std::vector<mpz_class>(eis_.begin() + i * d_, eis_.begin() + (i + 1) * d_), K->cap());
  return out;
}

bool Ring::equivalent(const Ring& o) const {
  if (this == &o) return true;
  if (p_ != o.p_ || d_ != o.d_ || e_ != o.e_ || digits_ != o.digits_ || modulus_ != o.modulus_) return false;
  if (is_unramified() != o.is_unramified()) return false;
  for (std::size_t k = 0; k < eis_.size(); ++k)
    if (eis_[k] != o.eis_[k]) return false;
  return true;
}

const mpz_class& Ring::ppow(int k) const {
  if (k < 0 || k >= static_cast<int>(ppow_.size()))
    throw Error(Errc::PrecisionExhausted, "p-power " + std::to_string(k) + " outside working range");
  return ppow_[k];
}

Element Ring::zero() const { return Element(shared_from_this(), std::vector<mpz_class>(dim(), 0), cap()); }

Element Ring::one() const { return from_int(1); }

Element Ring::from_int(long n) const { return from_mpz(mpz_class(n)); }

Element Ring::from_mpz(const mpz_class& n) const {
  std::vector<mpz_class> c(dim(), 0);
  c[0] = n;
  return Element(shared_from_this(), std::move(c), cap());
}

Element Ring::uniformizer() const {
  if (is_unramified()) return from_int(p_);
  std::vector<mpz_class> c(dim(), 0);
  if (e_ == 1) {
    // degree-one Eisenstein: pi = -a_0
    for (int j = 0; j < d_; ++j) c[j] = -eis_[j];
  } else {
    c[d_] = 1;
  }
  return Element(shared_from_this(), std::move(c), cap());
}

Element Ring::uniformizer_inverse() const {
  return Element(shared_from_this(), pi_inv_, cap(), 1);
}

Element Ring::generator() const {
  std::vector<mpz_class> c(dim(), 0);
  if (d_ > 1) {
    c[1] = 1;
  } else {
    // Phi(x) = x + c_0, so x = -c_0
    c[0] = -modulus_[0];
  }
  return Element(shared_from_this(), std::move(c), cap());
}

Element Ring::embed(const Element& k) const {
  if (!k.ring()->equivalent(*base())) throw Error(Errc::RingMismatch, "embed: element not in base ring");
  if (is_unramified()) return k;
  std::vector<mpz_class> c(dim(), 0);
  for (int j = 0; j < d_; ++j) c[j] = k.stored()[j];
  return Element(shared_from_this(), std::move(c), k.precision() * e_, k.shift());
}

Element Ring::from_base_coefficients(const std::vector<Element>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > e_) throw Error(Errc::CheckFailed, "too many coefficients");
  Element acc = zero();
  Element pw = one();
  const Element pi = uniformizer();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += embed(coeffs[i]) * pw;
    if (i + 1 < coeffs.size()) pw *= pi;
  }
  return acc;
}

void Ring::reduce_phi(mpz_class* c, int T) const {
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    if (c[k] == 0) continue;
    for (int j = 0; j < d_; ++j)
      if (modulus_[j] != 0) mpz_submul_ui(c[k - d_ + j].get_mpz_t(), c[k].get_mpz_t(), modulus_[j]);
    c[k] = 0;
  }
  if (T <= 0) return;
  const mpz_class& mod = ppow(T);
  for (int j = 0; j < d_; ++j) mpz_fdiv_r(c[j].get_mpz_t(), c[j].get_mpz_t(), mod.get_mpz_t());
}

std::vector<mpz_class> Ring::reduce_block(std::vector<mpz_class>& prod, int T) const {
  const int e = e_, d = d_, w = 2 * d_ - 1;
  const mpz_class& mod = ppow(T);
  for (int t = 0; t < 2 * e - 1; ++t) reduce_phi(&prod[t * w], 0);
  std::vector<mpz_class> tmp(w);
  for (int t = 2 * e - 2; t >= e; --t) {
    mpz_class* top = &prod[t * w];
    bool nz = false;
    for (int j = 0; j < d; ++j) {
      if (top[j] == 0) continue;
      mpz_fdiv_r(top[j].get_mpz_t(), top[j].get_mpz_t(), mod.get_mpz_t());
      nz = nz || top[j] != 0;
    }
    if (!nz) continue;
    for (int i : eis_nonzero_) {
      const mpz_class* ai = &eis_[i * d];
      mpz_class* dst = &prod[(t - e + i) * w];
      if (d == 1) {
        mpz_submul(dst[0].get_mpz_t(), top[0].get_mpz_t(), ai[0].get_mpz_t());
        continue;
      }
      for (auto& z : tmp) z = 0;
      for (int j1 = 0; j1 < d; ++j1) {
        if (top[j1] == 0) continue;
        for (int j2 = 0; j2 < d; ++j2)
          if (ai[j2] != 0) mpz_addmul(tmp[j1 + j2].get_mpz_t(), top[j1].get_mpz_t(), ai[j2].get_mpz_t());
      }
      reduce_phi(tmp.data(), 0);
      for (int j = 0; j < d; ++j) dst[j] -= tmp[j];
    }
    for (int j = 0; j < d; ++j) top[j] = 0;
  }
  std::vector<mpz_class> out(static_cast<std::size_t>(e) * d);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < d; ++j) {
      mpz_class& z = prod[i * w + j];
      mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
      out[i * d + j] = std::move(z);
    }
  return out;
}

void Ring::mul_raw(std::span<const mpz_class> a, std::span<const mpz_class> b, std::vector<mpz_class>& out,
                   int T) const {
  const int e = e_, d = d_, w = 2 * d_ - 1;
  std::vector<mpz_class> prod(static_cast<std::size_t>(2 * e - 1) * w);
  for (int i = 0; i < e; ++i)
    for (int j1 = 0; j1 < d; ++j1) {
      const mpz_class& x = a[i * d + j1];
      if (x == 0) continue;
      for (int k = 0; k < e; ++k)
        for (int j2 = 0; j2 < d; ++j2) {
          const mpz_class& y = b[k * d + j2];
          if (y == 0) continue;
          mpz_addmul(prod[(i + k) * w + j1 + j2].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
  out = reduce_block(prod, T);
}

std::vector<mpz_class> Ring::raw_unit_inverse(std::span<const mpz_class> y, int T) const {
  const int d = d_;
  // residue inverse: c0^(q-2) mod p in F_q
  mpz_class q = ppow(d) ;
  mpz_class ex = q - 2;
  std::vector<mpz_class> base(2 * d - 1, 0), acc(2 * d - 1, 0), tmp(2 * d - 1, 0);
  for (int j = 0; j < d; ++j) {
    base[j] = y[j];
    mpz_fdiv_r_ui(base[j].get_mpz_t(), base[j].get_mpz_t(), p_);
  }
  acc[0] = 1;
  auto okmul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(2 * d - 1, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    reduce_phi(r.data(), 1);
    return r;
  };
  for (long bit = static_cast<long>(mpz_sizeinbase(ex.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    acc = okmul(acc, acc);
    if (mpz_tstbit(ex.get_mpz_t(), bit)) acc = okmul(acc, base);
  }
  bool nonzero = false;
  for (int j = 0; j < d; ++j) nonzero = nonzero || acc[j] != 0;
  if (!nonzero) throw Error(Errc::InverseOfNonUnit, "residue is zero");

  std::vector<mpz_class> z(dim(), 0), t, yz;
  for (int j = 0; j < d; ++j) z[j] = acc[j];
  const mpz_class& mod = ppow(T);
  for (int iter = 0; iter < 80; ++iter) {
    mul_raw(y, z, yz, T);
    // t = 2 - y z ; converged when y z == 1
    bool done = (yz[0] == 1);
    for (std::size_t k = 1; done && k < yz.size(); ++k) done = yz[k] == 0;
    if (done) return z;
    t.assign(yz.size(), 0);
    for (std::size_t k = 0; k < yz.size(); ++k) {
      t[k] = -yz[k];
      if (k == 0) t[k] += 2;
      mpz_fdiv_r(t[k].get_mpz_t(), t[k].get_mpz_t(), mod.get_mpz_t());
    }
    std::vector<mpz_class> nz;
    mul_raw(z, t, nz, T);
    z = std::move(nz);
  }
  throw Error(Errc::InverseOfNonUnit, "Newton inversion did not converge");
}

// ---------------------------------------------------------------------------
// Element

Element::Element(RingPtr ring, std::vector<mpz_class> stored, long prec, int shift)
    : ring_(std::move(ring)), c_(std::move(stored)), prec_(prec), shift_(shift) {
  if (static_cast<int>(c_.size()) != ring_->dim()) throw Error(Errc::RingMismatch, "coefficient count");
  normalize();
}

void Element::normalize() {
  const Ring& R = *ring_;
  const int e = R.e_, d = R.d_;
  if (prec_ > R.cap()) prec_ = R.cap();
  if (prec_ <= 0) throw Error(Errc::PrecisionExhausted, "no known digits left");
  if (shift_ < 0) {
    for (auto& c : c_) c *= R.ppow(-shift_);
    shift_ = 0;
  }
  for (;;) {
    const long Ps = prec_ + static_cast<long>(e) * shift_;
    bool all_zero = true, all_div = true;
    for (int i = 0; i < e; ++i) {
      const long k = ceil_div(Ps - i, e);
      for (int j = 0; j < d; ++j) {
        mpz_class& c = c_[i * d + j];
        if (k <= 0) {
          c = 0;
          continue;
        }
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), R.ppow(static_cast<int>(k)).get_mpz_t());
        if (c != 0) {
          all_zero = false;
          if (!mpz_divisible_ui_p(c.get_mpz_t(), R.p_)) all_div = false;
        }
      }
    }
    if (all_zero) {
      shift_ = 0;
      return;
    }
    if (shift_ > 0 && all_div) {
      for (auto& c : c_) mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), R.p_);
      --shift_;
      continue;
    }
    return;
  }
}

bool Element::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& c) { return c == 0; });
}

long Element::valuation() const {
  const Ring& R = *ring_;
  long best = -1;
  for (int i = 0; i < R.e_; ++i)
    for (int j = 0; j < R.d_; ++j) {
      const mpz_class& c = c_[i * R.d_ + j];
      if (c == 0) continue;
      const long v = static_cast<long>(R.e_) * vp(c, R.p_) + i;
      if (best < 0 || v < best) best = v;
    }
  if (best < 0) return prec_;
  return best - static_cast<long>(R.e_) * shift_;
}

double Element::valuation_p() const { return static_cast<double>(valuation()) / ring_->e(); }
double Element::precision_p() const { return static_cast<double>(prec_) / ring_->e(); }

Element Element::coefficient(int i) const {
  const Ring& R = *ring_;
  auto K = R.base();
  const long Ps = prec_ + static_cast<long>(R.e_) * shift_;
  const long k = ceil_div(Ps - i, R.e_);
  std::vector<mpz_class> c(c_.begin() + i * R.d_, c_.begin() + (i + 1) * R.d_);
  return Element(K, std::move(c), k - shift_, shift_);
}

Element Element::with_precision(long prec) const {
  Element r = *this;
  r.prec_ = std::min(prec_, prec);
  r.normalize();
  return r;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& c : r.c_) c = -c;
  r.normalize();
  return r;
}

Element& Element::operator+=(const Element& o) {
  if (ring_ != o.ring_ && !ring_->equivalent(*o.ring_)) throw Error(Errc::RingMismatch, "add: operands from different rings");
  const Ring& R = *ring_;
  const int s = std::max(shift_, o.shift_);
  if (s > shift_)
    for (auto& c : c_) c *= R.ppow(s - shift_);
  const mpz_class& f = R.ppow(s - o.shift_);
  for (std::size_t k = 0; k < c_.size(); ++k) mpz_addmul(c_[k].get_mpz_t(), o.c_[k].get_mpz_t(), f.get_mpz_t());
  shift_ = s;
  prec_ = std::min(prec_, o.prec_);
  normalize();
  return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element& Element::operator*=(const Element& o) {
  if (ring_ != o.ring_ && !ring_->equivalent(*o.ring_)) throw Error(Errc::RingMismatch, "mul: operands from different rings");
  const Ring& R = *ring_;
  const long va = valuation(), vb = o.valuation();
  const long prec = std::min({prec_ + vb, o.prec_ + va, R.cap()});
  if (prec <= 0) throw Error(Errc::PrecisionExhausted, "product has no known digits");
  const int shift = shift_ + o.shift_;
  const long T = ceil_div(prec + static_cast<long>(R.e_) * shift, R.e_);
  std::vector<mpz_class> out;
  R.mul_raw(c_, o.c_, out, static_cast<int>(std::max(T, 1L)));
  c_ = std::move(out);
  prec_ = prec;
  shift_ = shift;
  normalize();
  return *this;
}

Element Element::unit_inverse() const {
  if (!is_unit()) throw Error(Errc::InverseOfNonUnit, "element is not a unit");
  const Ring& R = *ring_;
  auto z = R.raw_unit_inverse(c_, static_cast<int>(ceil_div(prec_, R.e_)));
  return Element(ring_, std::move(z), prec_);
}

Element Element::inverse() const {
  if (is_zero()) throw Error(Errc::InverseOfNonUnit, "zero to precision " + std::to_string(prec_));
  const long v = valuation();
  if (v == 0) return unit_inverse();
  const Ring& R = *ring_;
  const Element scale = v > 0 ? R.uniformizer_inverse().pow(v) : R.uniformizer().pow(-v);
  const Element w = *this * scale;
  return w.unit_inverse() * scale;
}

Element Element::pow(const mpz_class& n) const {
  if (n < 0) return inverse().pow(mpz_class(-n));
  Element acc = ring_->one();
  if (n == 0) return acc;
  const long bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (long b = bits - 1; b >= 0; --b) {
    acc *= acc;
    if (mpz_tstbit(n.get_mpz_t(), b)) acc *= *this;
  }
  return acc;
}

Element Element::mul_p_power(int k) const {
  Element r = *this;
  const int e = ring_->e();
  r.shift_ -= k;
  r.prec_ += static_cast<long>(e) * k;
  r.normalize();
  return r;
}

Element Element::mul_int(long n) const {
  if (n == 0) return ring_->zero();
  const int p = ring_->p();
  int a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  Element r = *this;
  for (auto& c : r.c_) c *= n;
  r.normalize();
  return a ? r.mul_p_power(a) : r;
}

Element Element::div_int(long n) const {
  if (n == 0) throw Error(Errc::InverseOfNonUnit, "division by zero");
  const int p = ring_->p();
  int a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  Element r = *this;
  const long T = ceil_div(prec_ + static_cast<long>(ring_->e()) * shift_, ring_->e());
  mpz_class inv;
  mpz_class m(n);
  mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), ring_->ppow(static_cast<int>(std::max(T, 1L))).get_mpz_t());
  for (auto& c : r.c_) c *= inv;
  r.normalize();
  return a ? r.mul_p_power(-a) : r;
}

std::string Element::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k].get_str();
  os << "]";
  if (shift_) os << "/p^" << shift_;
  os << " +O(pi^" << prec_ << ")";
  return os.str();
}

bool equal_to_precision(const Element& a, const Element& b) { return (a - b).is_zero(); }

long residual_valuation(const Element& a, const Element& b) { return (a - b).valuation(); }

}  // namespace lt
