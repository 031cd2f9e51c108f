#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lt/ring.hpp"

namespace lt {

/// Power series a_0 + a_1 X + ... + a_D X^D over a Ring, truncated at degree
/// D (the cap). Every coefficient carries its own absolute precision.
class Series {
 public:
  Series() = default;
  /// The zero series with cap D.
  Series(RingPtr R, int D);
  /// Cap = coeffs.size() - 1.
  explicit Series(std::vector<Element> coeffs);

  static Series one(const RingPtr& R, int D);
  /// c X^n (zero if n > D).
  static Series monomial(const Element& c, int n, int D);

  int cap() const { return static_cast<int>(c_.size()) - 1; }
  const RingPtr& ring() const { return ring_; }
  const Element& operator[](int n) const { return c_.at(n); }
  void set(int n, Element c);
  const std::vector<Element>& coefficients() const { return c_; }

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b) { return a.mul(b); }
  Series mul(const Series& o) const;
  Series scale(const Element& c) const;
  Series truncate(int D) const;

  /// X d/dX.
  Series derivative() const;
  /// Throws Error(NonUnitLeadingTerm) unless a_0 is a unit.
  Series inverse() const;
  /// s(X^m), truncated at the same cap.
  Series substitute_power(int m) const;
  /// s(-X).
  Series substitute_neg() const;
  /// s(g) for g(0) = 0.
  Series compose(const Series& g) const;
  /// Coefficientwise image in `target`.
  Series map(const std::function<Element(const Element&)>& f, const RingPtr& target) const;

  /// sum_{n<=D} a_n x^n.
  Element evaluate(const Element& x) const;

  bool is_zero() const;
  /// Smallest v(a_n - b_n) in uniformizer units over n <= min cap.
  long residual_valuation(const Series& o) const;

 private:
  RingPtr ring_;
  std::vector<Element> c_;
};

/// exp(f) for f(0) = 0, through the recurrence n g_n = sum_k k f_k g_{n-k}.
/// Throws Error(NonzeroConstantTerm).
Series series_exp(const Series& f);

/// log(g) for g(0) = 1, as the integral of X g'/g. Throws Error(NonzeroConstantTerm).
Series series_log(const Series& g);

struct OverconvergenceReport {
  int integral_up_to = -1;  // largest n with v(a_i) >= 0 for all i <= n
  bool slope_infinite = false;  // no nonzero coefficient in the window
  double slope = 0;  // least squares, v_p(a_n) against n
  double intercept = 0;
  int n0 = 0, n1 = 0;
};

/// Valuations are normalized with v(p) = 1.
OverconvergenceReport overconvergence_report(const Series& s, int n0, int n1);

struct TailCertificate {
  std::string rigor;  // "certified" or "heuristic"
  double fitted_slope = 0;
  double used_slope = 0;  // after the 50% haircut when certified
  double bound = 0;  // lower bound on v_p(a_n) for all n > D
};

struct Evaluation {
  Element value;
  TailCertificate tail;
};

/// Certifies min_{n > D} v_p(a_n) >= target from the valuation profile and
/// returns sum_{n<=D} a_n x^n for a unit x. Throws Error(TailNotBounded).
Evaluation evaluate_at_unit(const Series& s, const Element& x, double target);

/// Tail certificate alone (see evaluate_at_unit).
TailCertificate certify_tail(const Series& s, double target);

/// `n,valuation` rows with v_p(a_n).
void write_valuation_csv(std::ostream& os, const Series& s);

}  // namespace lt
