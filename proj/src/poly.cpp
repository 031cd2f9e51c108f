#include "lt/poly.hpp"

#include "lt/error.hpp"

namespace lt {

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const RingPtr& R = a[0].ring();
  Poly out(a.size() + b.size() - 1, R->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() && a[i].precision() >= R->cap()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Poly out(std::max(a.size(), b.size()), a[0].ring()->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_pow(const Poly& a, int n) {
  Poly acc{a.at(0).ring()->one()};
  for (int i = 0; i < n; ++i) acc = poly_mul(acc, a);
  return acc;
}

Poly poly_derivative(const Poly& a) {
  Poly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i].mul_int(static_cast<long>(i)));
  if (out.empty() && !a.empty()) out.push_back(a[0].ring()->zero());
  return out;
}

Element poly_eval(const Poly& a, const Element& x) {
  if (a.empty()) return x.ring()->zero();
  Element acc = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) acc = acc * x + a[i];
  return acc;
}

Poly poly_taylor(const Poly& f, const Element& x) {
  // repeated synthetic division by (Y - x)
  Poly c = f;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) c[i - 1] += c[i] * x;
  return c;
}

Poly poly_embed(const Poly& a, const RingPtr& target) {
  Poly out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(target->embed(c));
  return out;
}

Poly lubin_tate_poly(const Element& u) {
  const RingPtr& R = u.ring();
  const int p = R->p();
  Poly f(p + 1, R->zero());
  f[p] = R->one();
  f[1] = u.mul_int(p);
  return f;
}

}  // namespace lt
