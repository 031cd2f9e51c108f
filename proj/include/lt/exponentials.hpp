#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lt/context.hpp"
#include "lt/extensions.hpp"
#include "lt/series.hpp"
#include "lt/witt.hpp"

namespace lt {

/// gamma X - gamma X^p over K'.
Series dwork_exponent(const Tower& tw, int D);
/// E_gamma(X) = exp(gamma X - gamma X^p) over K'.
Series dwork_series(const Tower& tw, int D);

/// w X - u w X^p + (gamma X^p - gamma X^{p^2}) / p over L_u.
Series e_u2_exponent(const Tower& tw, int D);
Series e_u2_series(const Tower& tw, int D);

/// omega_1, ..., omega_depth with f_u(omega_i) = omega_{i-1}, omega_0 = 0,
/// all inside R = K[X]/((f_u^{(depth-1)}(X))^{p-1} + u p), whose
/// uniformizer is omega_depth.
struct CoherentRoots {
  RingPtr K, R;
  Element u;  // in K
  int depth = 0;
  std::vector<Element> omega;  // omega[0] = 0, ..., omega[depth]
};

CoherentRoots coherent_roots(const RingPtr& K, const Element& u, int depth);

/// sum_{i<n} omega_{n-i} (X^{p^i} - u X^{p^{i+1}}) / p^i over cr.R (n <= depth).
Series e_un_exponent(const CoherentRoots& cr, int n, int D);
Series e_un_series(const CoherentRoots& cr, int n, int D);

/// Residual valuation (uniformizer units of cr.R) of
/// E_{u,n}(X) - exp(u p omega_{n+1} X) E([omega_{n+1}][h(omega_{n+1})], X),
/// h = f_u(X)/X - u p; needs depth >= n + 1. Returns the minimum over
/// coefficients of v(residual) - precision (>= 0 means zero to precision).
struct FactorizationResult {
  long residual_margin = 0;
  long min_precision = 0;
  bool lambda_topologically_nilpotent = false;  // all components non-units
};
FactorizationResult e_un_factorization(const CoherentRoots& cr, int n, int D);

/// Evaluation of one of the exponentials above at a Teichmuller point together with the
/// series degree that certified it.
struct CertifiedValue {
  Element value;
  TailCertificate tail;
  int D = 0;
};

/// Towers and series for one (p, d, N, D). The degree D may grow (doubling,
/// up to D_max) when the tail of a series cannot be certified at D.
class ExpWorkbench {
 public:
  ExpWorkbench(PrecisionContext ctx, int D_max = 4096);

  const PrecisionContext& ctx() const { return ctx_; }
  const RingPtr& K() const { return K_; }

  /// Tower for u; cached.
  const Tower& tower(const Element& u);

  /// E_{u,2}(v) for u = v^{1-p}; target N digits.
  CertifiedValue e_u2_at(const Element& v);
  /// E_gamma(x) for a unit x of O_K.
  CertifiedValue dwork_at(const Element& x);

  /// Rebuilds everything at a larger series degree.
  void grow();

 private:
  PrecisionContext ctx_;
  int D_max_;
  RingPtr K_;
  std::vector<std::pair<int, Tower>> towers_;  // by residue code of u
};

struct KummerReport {
  long residual = 0;  // v_L(E(v)^p - E_gamma(v^p)) in digits of p
  long witness_valuation = -1;  // v_{K'}(E_gamma(v^p) - 1)
  bool pass = false;
  std::string rigor;
  int D = 0;
};
KummerReport kummer_generator_check(ExpWorkbench& wb, const Element& v);

struct SelfDualReport {
  Element alpha;  // in M_u
  std::vector<Element> conjugates;  // in M_u, conjugates[0] = alpha
  Matrix gram;
  long gram_digits = 0;  // min over entries of v_K(gram - identity)
  long alpha_valuation = 0;  // v_{M_u}(alpha)
  long different_valuation = 0;  // v_{M_u}(psi_u'(t))
  bool gram_symmetric = false;
  bool gram_circulant = false;
  bool involution = false;  // E(-v) E(v) = 1 and E^{z^{(p-1)/2}} = E^{-1}
  long set_match_digits = -1;  // conjugate_crosscheck
  bool pass = false;
  std::string rigor;
};

/// alpha_u = (sum_{s in mu_{p-1} cup {0}} E_{u,2}(v)^s) / p and its Gram matrix.
SelfDualReport self_dual_generator(ExpWorkbench& wb, const Element& v);

/// Compares {(1 + sum_k zeta^{j (z^k mod p)} E^{z^k}) / p} with the Hensel
/// conjugates of alpha (as sets). Fills set_match_digits.
void conjugate_crosscheck(ExpWorkbench& wb, const Element& v, SelfDualReport& rep);

/// One row per choice of the image of t_u among the roots of psi_{sigma(u)}:
/// the number of p-adic digits to which sigma~(alpha_u) and alpha_{sigma(u)}
/// agree, sigma~ acting as the Frobenius on K-coefficients.
struct SigmaAlignmentRow {
  int alignment = 0;
  long agreement_digits = 0;
};
std::vector<SigmaAlignmentRow> explore_sigma_alpha(ExpWorkbench& wb, const Element& v);

/// Smallest primitive root modulo p.
int smallest_primitive_root(int p);

}  // namespace lt
