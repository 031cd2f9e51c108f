#pragma once

#include <string>
#include <vector>

#include "lt/linalg.hpp"
#include "lt/poly.hpp"
#include "lt/ring.hpp"

namespace lt {

/// Ring map source -> target determined by the image of the source
/// uniformizer, twisted by sigma^frob on the coefficients in O_K. For an
/// unramified source the image is p and the map is the twisted embedding.
class RingHom {
 public:
  RingHom() = default;
  /// Throws Error(CheckFailed) if the image is not a root of the twisted
  /// Eisenstein polynomial of source.
  RingHom(RingPtr source, RingPtr target, Element image_of_pi, int frob = 0);
  static RingHom base_embedding(const RingPtr& K, const RingPtr& target, int frob = 0);

  Element operator()(const Element& x) const;
  Poly operator()(const Poly& f) const;

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const Element& image() const { return image_; }
  int frob() const { return frob_; }

 private:
  RingPtr source_, target_;
  Element image_;
  int frob_ = 0;
  Element frob_root_;  // sigma^frob(x) in O_K, when d > 1
};

/// Target of an untwisted RingHom as a free module over its source, with
/// integral basis s^a pi^i (s the image of the source uniformizer,
/// a < e_S, i < m = e_T / e_S).
class RelativeStructure {
 public:
  explicit RelativeStructure(RingHom hom);

  int degree() const { return m_; }
  const RingHom& hom() const { return hom_; }

  /// x = sum_i hom(c_i) pi^i with c_i in the source ring.
  std::vector<Element> coefficients(const Element& x) const;
  /// Multiplication-by-x matrix over the source, column j = x pi^j.
  Matrix multiplication_matrix(const Element& x) const;
  Element trace(const Element& x) const;
  Element norm(const Element& x) const;
  /// c with hom(c) = x; throws Error(NotInSubfield) if x is not in the image.
  Element preimage(const Element& x) const;

 private:
  RingHom hom_;
  int m_ = 1;
  bool identity_basis_ = true;
  Matrix binv_;  // K-coordinates -> basis coordinates
};

/// The rings of the construction for one Teichmuller unit u in O_K:
///   K'  = K[gamma]/(gamma^{p-1} + p)
///   L_u = K[w]/((w^p + u p w)^{p-1} + p)     (so gamma = w^p + u p w)
///   M_u = K[t]/(t (t + u p)^{p-1} + p)      (t = w^{p-1})
struct Tower {
  RingPtr K, Kp, L, M;
  Element u;
  RingHom K_to_Kp, K_to_L, K_to_M, Kp_to_L, M_to_L;

  Element gamma() const { return Kp->uniformizer(); }
  Element omega() const { return L->uniformizer(); }
  Element t() const { return M->uniformizer(); }
  /// psi_u over K.
  Poly psi() const;
};

/// Throws Error(NotAUnit) unless u^{q-1} = 1 and u is a unit.
Tower build_tower(const RingPtr& K, const Element& u);

/// Eisenstein ring for a monic polynomial given by its lower coefficients over K.
RingPtr eisenstein_from_poly(const RingPtr& K, const Poly& monic, const std::string& label);

/// The p roots of psi_u in M_u, the tautological root t first. Throws
/// Error(RootCountMismatch) if the residue equation does not have p roots.
std::vector<Element> hensel_conjugates(const Tower& tw);

/// The element of M_u mapping to x in L_u; its coefficients over K are those
/// of x in the basis 1, t, ..., t^{p-1}. Throws Error(NotInSubfield).
Element express_in_subfield(const Tower& tw, const Element& x);

}  // namespace lt
