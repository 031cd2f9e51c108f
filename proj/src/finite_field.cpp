#include "lt/finite_field.hpp"

#include <algorithm>
#include <cassert>

#include "lt/error.hpp"

namespace lt {

namespace {

// Remainder of monic `f` (full coefficient list, low to high) modulo monic `g`.
std::vector<int> poly_rem(std::vector<int> f, const std::vector<int>& g, int p) {
  const int dg = static_cast<int>(g.size()) - 1;
  for (int k = static_cast<int>(f.size()) - 1; k >= dg; --k) {
    const int c = f[k] % p;
    if (c == 0) continue;
    for (int i = 0; i <= dg; ++i) f[k - dg + i] = ((f[k - dg + i] - c * g[i]) % p + p) % p;
  }
  f.resize(std::max(dg, 0));
  return f;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<int>& lower, int p) {
  const int d = static_cast<int>(lower.size());
  if (d <= 1) return true;
  std::vector<int> f(lower);
  f.push_back(1);
  for (int deg = 1; deg <= d / 2; ++deg) {
    std::int64_t count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      std::vector<int> g(deg + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < deg; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[deg] = 1;
      auto r = poly_rem(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
    }
  }
  return true;
}

std::vector<int> smallest_irreducible(int p, int d) {
  std::int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (std::int64_t code = 0; code < count; ++code) {
    std::vector<int> lower(d);
    std::int64_t c = code;
    for (int i = 0; i < d; ++i) {
      lower[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (is_irreducible_mod_p(lower, p)) return lower;
  }
  throw Error(Errc::ConfigError, "no irreducible polynomial found");
}

FiniteField::FiniteField(int p, int d) : p_(p), d_(d), q_(1), modulus_(smallest_irreducible(p, d)) {
  for (int i = 0; i < d; ++i) q_ *= p;
  log_.assign(q_, -1);
  exp_.assign(q_ - 1, 0);
  for (int g = 1; g < q_; ++g) {
    int x = 1;
    int order = 0;
    do {
      x = mul_slow(x, g);
      ++order;
    } while (x != 1);
    if (order == q_ - 1) {
      generator_ = g;
      break;
    }
  }
  int x = 1;
  for (int i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = mul_slow(x, generator_);
  }
}

std::vector<int> FiniteField::digits(int x) const {
  std::vector<int> out(d_);
  for (int i = 0; i < d_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

int FiniteField::encode(const std::vector<int>& digits) const {
  int x = 0;
  for (int i = d_ - 1; i >= 0; --i) x = x * p_ + ((digits[i] % p_) + p_) % p_;
  return x;
}

int FiniteField::add(int a, int b) const {
  auto da = digits(a), db = digits(b);
  for (int i = 0; i < d_; ++i) da[i] = (da[i] + db[i]) % p_;
  return encode(da);
}

int FiniteField::neg(int a) const {
  auto da = digits(a);
  for (auto& x : da) x = (p_ - x) % p_;
  return encode(da);
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::scale(int a, int x) const {
  auto dx = digits(x);
  a = ((a % p_) + p_) % p_;
  for (auto& c : dx) c = (c * a) % p_;
  return encode(dx);
}

int FiniteField::mul_slow(int a, int b) const {
  auto da = digits(a), db = digits(b);
  std::vector<int> prod(2 * d_ - 1, 0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  std::vector<int> g(modulus_);
  g.push_back(1);
  return encode(poly_rem(prod, g, p_));
}

int FiniteField::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int FiniteField::inv(int a) const {
  if (a == 0) throw Error(Errc::InverseOfNonUnit, "zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int FiniteField::pow(int a, std::int64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::int64_t m = q_ - 1;
  std::int64_t e = ((static_cast<std::int64_t>(log_[a]) * (n % m)) % m + m) % m;
  return exp_[e];
}

int FiniteField::frobenius(int x, int k) const {
  for (int i = 0; i < k; ++i) x = pow(x, p_);
  return x;
}

int FiniteField::trace(int x) const {
  int t = 0;
  int y = x;
  for (int i = 0; i < d_; ++i) {
    t = add(t, y);
    y = frobenius(y);
  }
  // the trace lies in F_p, i.e. only the constant digit is nonzero
  assert(t < p_);
  return t;
}

int projective_canonical(const FiniteField& k, int x) {
  int best = x;
  for (int a = 2; a < k.p(); ++a) best = std::min(best, k.scale(a, x));
  return best;
}

std::vector<int> projective_points(const FiniteField& k) {
  std::vector<int> pts;
  for (int x = 1; x < k.q(); ++x)
    if (projective_canonical(k, x) == x) pts.push_back(x);
  return pts;
}

}  // namespace lt
