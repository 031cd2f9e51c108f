#pragma once

#include <gmpxx.h>

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lt/context.hpp"

namespace lt {

class Ring;
class Element;
using RingPtr = std::shared_ptr<const Ring>;

/// A complete local ring O_L presented as O_K[pi]/(E(pi)), where
/// O_K = Z_p[x]/(Phi(x)) is unramified of degree d and E is Eisenstein of
/// degree e over O_K. The unramified ring itself is the case e = 1 with
/// E(X) = X - p, so Z_p is (d, e) = (1, 1).
///
/// Elements are stored as e*d integers (index i*d + j is the coefficient of
/// pi^i x^j). Precision is measured in uniformizer units of the ring: an
/// element with precision P is known modulo pi^P. The working cap is
/// e * digits, where digits is the number of p-adic digits carried.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  /// O_K with Phi the smallest irreducible (see smallest_irreducible).
  static RingPtr unramified(int p, int d, int digits);
  static RingPtr unramified(const PrecisionContext& ctx) {
    return unramified(ctx.p, ctx.d, ctx.working_digits());
  }

  /// O_K[pi]/(pi^e + a_{e-1} pi^{e-1} + ... + a_0) with `lower` = a_0..a_{e-1}
  /// elements of the unramified ring `base`. Throws Error(CheckFailed) if the
  /// polynomial is not Eisenstein.
  static RingPtr eisenstein(const RingPtr& base, const std::vector<Element>& lower,
                            std::string label);

  int p() const { return p_; }
  int d() const { return d_; }
  int e() const { return e_; }
  int dim() const { return e_ * d_; }
  int digits() const { return digits_; }
  long cap() const { return static_cast<long>(e_) * digits_; }
  bool is_unramified() const { return !base_owner_; }
  RingPtr base() const;
  const std::string& label() const { return label_; }
  /// c_0..c_{d-1} of Phi.
  const std::vector<int>& modulus() const { return modulus_; }
  /// a_0..a_{e-1} of the Eisenstein polynomial, as elements of base().
  std::vector<Element> eisenstein_lower() const;

  const mpz_class& ppow(int k) const;
  /// Reduces a raw product block of (2e-1)*(2d-1) integers (index
  /// i*(2d-1) + j for pi^i x^j) modulo Phi, E and p^T to e*d stored
  /// coefficients. The block is consumed.
  std::vector<mpz_class> reduce_block(std::vector<mpz_class>& block, int T) const;
  /// Same presentation (p, d, e, digits, Phi, E); elements of equivalent rings mix.
  bool equivalent(const Ring& o) const;

  Element zero() const;
  Element one() const;
  Element from_int(long n) const;
  Element from_mpz(const mpz_class& n) const;
  /// pi (p for the unramified ring).
  Element uniformizer() const;
  /// pi^{-1}, carried with one digit of denominator.
  Element uniformizer_inverse() const;
  /// x, the generator of O_K over Z_p, embedded in this ring.
  Element generator() const;
  /// Embeds an element of base() (coefficient of pi^0).
  Element embed(const Element& k) const;
  /// Element from a vector of base() elements, one per power of pi.
  Element from_base_coefficients(const std::vector<Element>& coeffs) const;

 private:
  Ring() = default;
  friend class Element;

  // out = a*b reduced to e*d coefficients modulo p^T.
  void mul_raw(std::span<const mpz_class> a, std::span<const mpz_class> b, std::vector<mpz_class>& out,
               int T) const;
  // In-place reduction of a 2d-1 long O_K product modulo Phi and p^T (T <= 0: Phi only).
  void reduce_phi(mpz_class* c, int T) const;
  // Inverse of an integral unit given by raw coefficients, modulo p^T.
  std::vector<mpz_class> raw_unit_inverse(std::span<const mpz_class> y, int T) const;

  int p_ = 0, d_ = 1, e_ = 1, digits_ = 0;
  std::vector<int> modulus_;
  std::vector<mpz_class> eis_;  // e*d integers
  std::vector<int> eis_nonzero_;
  std::vector<mpz_class> ppow_;
  std::vector<mpz_class> pi_inv_;  // stored coefficients of p * pi^{-1}
  RingPtr base_owner_;  // null for the unramified ring itself
  std::string label_;
};

/// An element of a Ring with tracked absolute precision. The value is
/// stored / p^shift, where `stored` is an integral element; shift > 0 only
/// when the value is not integral.
class Element {
 public:
  Element() = default;
  /// Normalizes; throws Error(PrecisionExhausted) if prec <= 0.
  Element(RingPtr ring, std::vector<mpz_class> stored, long prec, int shift = 0);

  const RingPtr& ring() const { return ring_; }
  bool valid() const { return static_cast<bool>(ring_); }
  long precision() const { return prec_; }
  int shift() const { return shift_; }
  std::span<const mpz_class> stored() const { return c_; }

  /// Valuation in uniformizer units; equals precision() for zero.
  long valuation() const;
  double valuation_p() const;
  double precision_p() const;
  bool is_zero() const;
  bool is_unit() const { return !is_zero() && valuation() == 0; }
  bool is_integral() const { return shift_ == 0; }

  /// Coefficient of pi^i as an element of the base ring.
  Element coefficient(int i) const;
  Element with_precision(long prec) const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

  /// Throws Error(InverseOfNonUnit) for zero-to-precision.
  Element inverse() const;
  /// Inverse of a unit; throws Error(InverseOfNonUnit) otherwise.
  Element unit_inverse() const;
  Element pow(const mpz_class& n) const;
  Element pow(long n) const { return pow(mpz_class(n)); }
  /// this * p^k (k < 0 divides).
  Element mul_p_power(int k) const;
  Element mul_int(long n) const;
  /// Division by a nonzero integer; p-parts become denominator.
  Element div_int(long n) const;

  std::string to_string() const;

 private:
  void normalize();

  RingPtr ring_;
  std::vector<mpz_class> c_;
  long prec_ = 0;
  int shift_ = 0;
};

bool equal_to_precision(const Element& a, const Element& b);
/// valuation(a - b) in uniformizer units.
long residual_valuation(const Element& a, const Element& b);
/// v_p of a nonzero integer.
int vp(const mpz_class& n, int p);

}  // namespace lt
