#pragma once

#include <cstdint>
#include <vector>

namespace lt {

/// Lower coefficients c_0..c_{d-1} of the monic degree-d polynomial over F_p
/// that is irreducible and has the smallest encoding sum c_i p^i.
std::vector<int> smallest_irreducible(int p, int d);

/// `lower` holds c_0..c_{d-1} of a monic polynomial over F_p.
bool is_irreducible_mod_p(const std::vector<int>& lower, int p);

/// The residue field k = F_q = F_p[x]/(Phi mod p), with Phi the smallest
/// irreducible. Elements are encoded as integers sum c_j p^j in [0, q).
class FiniteField {
 public:
  FiniteField(int p, int d);

  int p() const { return p_; }
  int d() const { return d_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int pow(int a, std::int64_t n) const;
  /// a in F_p acting on x.
  int scale(int a, int x) const;
  /// x -> x^(p^k)
  int frobenius(int x, int k = 1) const;
  /// Tr_{k/F_p}(x) as an integer in [0, p).
  int trace(int x) const;

  std::vector<int> digits(int x) const;
  int encode(const std::vector<int>& digits) const;
  int primitive_element() const { return generator_; }

 private:
  int mul_slow(int a, int b) const;

  int p_, d_, q_;
  std::vector<int> modulus_;
  int generator_ = 1;
  std::vector<int> log_;
  std::vector<int> exp_;
};

/// Canonical representative of the F_p^x-coset of a nonzero x: the smallest
/// encoding among a*x, a = 1..p-1.
int projective_canonical(const FiniteField& k, int x);

/// All points of P(k) = k^x / F_p^x by canonical representative, ascending.
std::vector<int> projective_points(const FiniteField& k);

}  // namespace lt
