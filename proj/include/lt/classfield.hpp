#pragma once

#include <cstdint>
#include <vector>

#include "lt/finite_field.hpp"
#include "lt/ring.hpp"
#include "lt/series.hpp"

namespace lt {

/// x in Z = {x in O_K : Tr_{K/Q_p}(x) in p Z_p}.
bool z_membership(const Element& x);

/// {y in k : Tr_{k/F_p}(v^p y) = 0} as ascending residue codes.
std::vector<int> trace_kernel(const FiniteField& k, int v);

struct CorrespondenceReport {
  std::vector<int> points;  // P(k) by canonical representative
  std::vector<std::vector<int>> kernels;  // kernels[i] belongs to points[i]
};

/// Kernels of all points of P(k). Throws Error(DuplicateFingerprint) if two
/// points share a kernel.
CorrespondenceReport subextension_correspondence(const FiniteField& k);

struct LineReport {
  bool by_span = false;  // v^p in span(v1^p, v2^p)
  bool by_kernel = false;  // kernel(v) contains kernel(v1) cap kernel(v2)
  bool agree() const { return by_span == by_kernel; }
};

/// Whether v lies on the line of P(k) through v1 != v2.
LineReport line_containment(const FiniteField& k, int v, int v1, int v2);

/// Points of P(k) on the line through v1 and v2, by the span characterization.
std::vector<int> line_points(const FiniteField& k, int v1, int v2);

struct EquivarianceReport {
  bool equivariant = true;  // kernel(sigma v) = sigma(kernel v) for all v
  std::vector<int> fixed_by_kernel;  // u = v^{1-p} with kernel(sigma v) = kernel(v)
  std::vector<int> fixed_by_power;  // u in (k^x)^{p-1} with u^p = u
  bool fixed_match() const { return fixed_by_kernel == fixed_by_power; }
};

EquivarianceReport frobenius_equivariance(const FiniteField& k);

struct NormIdentityReport {
  int v = 0, w = 0;  // residue codes
  Element norm;  // N_{M_u/K}(-(w/v)(1 + t w/v)), t = omega^{p-1}
  Element rhs;  // 1 + p v^{-p}(w - w^p)
  long literal_residual = 0;  // v_K(norm - rhs)
  long negated_residual = 0;  // v_K(norm + rhs)
  long corrected_residual = 0;  // v_K(N(1 + t w/v) - rhs)
  bool literal_pass() const { return literal_residual >= 2; }
  /// The congruence holds up to the sign of the norm convention.
  bool signed_pass() const { return literal_residual >= 2 || negated_residual >= 2; }
  bool corrected_pass() const { return corrected_residual >= 2; }
};

/// Congruence modulo p^2 for u = v^{1-p}, v and w Teichmuller lifts of the
/// given residue codes in K.
NormIdentityReport norm_identity_check(const RingPtr& K, int v, int w);

/// Smallest-code eta in mu_{q-1} whose residue generates a normal basis of
/// k / F_p; the residue has nonzero trace.
Element normal_basis_eta(const RingPtr& K);

/// Determinant over Z_p of the coordinates of eta, eta^p - eta^{p^2}, ...,
/// eta^{p^{d-1}} - eta^{p^d} in the basis 1, x, ..., x^{d-1}.
Element decomposition_determinant(const Element& eta);

struct UnitGroupReport {
  int generated = 0;  // order of <1 + eta^{p^i} p> in (O_K/p^2)^x
  int classes = 0;  // classes of (1+P)/(1+P^2) hit
  int expected = 0;  // p^d
  bool generators_order_p = true;
  bool frobenius_shifts = true;  // sigma(1 + eta^{p^i} p) = 1 + eta^{p^{i+1}} p mod p^2
  bool pass() const { return generated == expected && classes == expected && generators_order_p && frobenius_shifts; }
};

UnitGroupReport unit_group_decomposition(int p, int d);

struct WreathReport {
  std::int64_t order = 0;
  std::int64_t expected = 0;  // p^d d
  bool relations = false;
};

/// Permutation model of <sigma, g_0..g_{d-1} | g_i^p, sigma^d,
/// sigma g_i sigma^{-1} = g_{i+1}, [g_i, g_j]> on p d points.
WreathReport wreath_model(int p, int d);

/// [a](X) for the Lubin-Tate polynomial h(X) = X^q + pX: the series with
/// [a](X) = aX mod X^2 and h([a]) = [a](h), truncated at D.
Series lubin_tate_endo(const Element& a, int D);

/// min over coefficients of v(h(f) - f(h)) - precision (>= 0: zero to precision).
long lubin_tate_residual(const Series& f);

}  // namespace lt
