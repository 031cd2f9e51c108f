#pragma once

#include <vector>

#include "lt/ring.hpp"

namespace lt {

/// Dense polynomial, coefficients low to high.
using Poly = std::vector<Element>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int n);
Poly poly_derivative(const Poly& a);
Element poly_eval(const Poly& a, const Element& x);
/// Taylor coefficients at x: f(x + y) = sum_k out[k] y^k.
Poly poly_taylor(const Poly& f, const Element& x);
/// Maps every coefficient into `target` via Ring::embed.
Poly poly_embed(const Poly& a, const RingPtr& target);

/// f_u(X) = X^p + u p X over u's ring.
Poly lubin_tate_poly(const Element& u);

}  // namespace lt
