#pragma once

#include <vector>

#include "lt/finite_field.hpp"
#include "lt/ring.hpp"

namespace lt {

/// Residue of an integral element of O_K as an F_q code (see FiniteField).
int residue_code(const Element& a);

/// O_K element with the given residue digits (each coefficient in [0, p)).
Element from_residue_code(const RingPtr& K, int code);

/// Teichmuller lift of the residue `code`: the t with t^q = t and t = code mod p.
Element teichmuller_lift(const RingPtr& K, int code);

/// mu_{q-1} as Teichmuller lifts of 1..q-1 (by residue code).
std::vector<Element> teichmuller_units(const RingPtr& K);

/// Image of the generator x of O_K under the Frobenius lift sigma^k.
Element frobenius_generator_image(const RingPtr& K, int k = 1);

/// sigma^k on O_K (K unramified).
Element frobenius(const Element& a, int k = 1);

/// Tr_{K/Q_p}(a), returned as an element of Z_p (d = 1 ring with the same digits).
Element trace_to_qp(const Element& a);

/// exp(x) for v(x) > e/(p-1); throws Error(ConvergenceDomain) otherwise.
Element padic_exp(const Element& x);

/// log(y) for y in 1 + P; throws Error(ConvergenceDomain) otherwise.
Element padic_log(const Element& y);

}  // namespace lt
