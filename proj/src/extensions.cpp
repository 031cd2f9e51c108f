#include "lt/extensions.hpp"

#include <algorithm>

#include "lt/error.hpp"
#include "lt/finite_field.hpp"
#include "lt/padic.hpp"

namespace lt {

namespace {

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

Element twist(const Element& c, int frob, const Element& root) {
  if (frob == 0 || c.ring()->d() == 1) return c;
  const RingPtr& K = c.ring();
  Element acc = K->zero();
  Element pw = K->one();
  for (int j = 0; j < K->d(); ++j) {
    std::vector<mpz_class> s(K->dim(), 0);
    s[0] = c.stored()[j];
    acc += Element(K, std::move(s), c.precision() + c.shift()) * pw;
    pw *= root;
  }
  return acc.mul_p_power(-c.shift()).with_precision(c.precision());
}

}  // namespace

RingHom::RingHom(RingPtr source, RingPtr target, Element image_of_pi, int frob)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image_of_pi)), frob_(frob) {
  if (!target_->base()->equivalent(*source_->base()))
    throw Error(Errc::RingMismatch, "source and target over different O_K");
  if (!image_.ring()->equivalent(*target_)) throw Error(Errc::RingMismatch, "image not in target");
  const int d = source_->d();
  frob_ = ((frob_ % d) + d) % d;
  if (frob_ != 0) frob_root_ = frobenius_generator_image(source_->base(), frob_);
  if (!source_->is_unramified()) {
    // E^sigma(image) = 0
    Element acc = target_->one();
    const auto lower = source_->eisenstein_lower();
    Element val = image_.pow(source_->e());
    Element pw = target_->one();
    for (int i = 0; i < source_->e(); ++i) {
      val += target_->embed(twist(lower[i], frob_, frob_root_)) * pw;
      pw *= image_;
    }
    if (!val.is_zero() && val.valuation() < val.precision())
      throw Error(Errc::CheckFailed, source_->label() + " -> " + target_->label() + ": image is not a root (residual valuation " +
                                         std::to_string(val.valuation()) + ")");
  }
}

RingHom RingHom::base_embedding(const RingPtr& K, const RingPtr& target, int frob) {
  return RingHom(K, target, target->from_int(K->p()), frob);
}

Element RingHom::operator()(const Element& x) const {
  if (!x.ring()->equivalent(*source_)) throw Error(Errc::RingMismatch, "hom applied outside its source");
  if (source_->is_unramified()) return target_->embed(twist(x, frob_, frob_root_));
  const int e = source_->e();
  Element acc = target_->embed(twist(x.coefficient(e - 1), frob_, frob_root_));
  for (int i = e - 2; i >= 0; --i) acc = acc * image_ + target_->embed(twist(x.coefficient(i), frob_, frob_root_));
  return acc;
}

Poly RingHom::operator()(const Poly& f) const {
  Poly out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back((*this)(c));
  return out;
}

RelativeStructure::RelativeStructure(RingHom hom) : hom_(std::move(hom)) {
  if (hom_.frob() != 0) throw Error(Errc::RingMismatch, "relative structure needs an untwisted map");
  const RingPtr& S = hom_.source();
  const RingPtr& T = hom_.target();
  const int eS = S->e(), eT = T->e();
  if (eT % eS != 0) throw Error(Errc::RingMismatch, "ramification indices do not divide");
  m_ = eT / eS;
  if (S->is_unramified()) return;
  const Element& s = hom_.image();
  if (s.valuation() != m_) throw Error(Errc::CheckFailed, "image of the uniformizer has the wrong valuation");
  identity_basis_ = false;
  auto K = T->base();
  const int d = T->d();
  Matrix B(eT, std::vector<Element>(eT, K->zero()));
  Element sa = T->one();
  for (int a = 0; a < eS; ++a) {
    Element b = sa;
    for (int i = 0; i < m_; ++i) {
      for (int k = 0; k < eT; ++k) {
        std::vector<mpz_class> c(b.stored().begin() + k * d, b.stored().begin() + (k + 1) * d);
        B[k][a * m_ + i] = Element(K, std::move(c), K->cap());
      }
      b *= T->uniformizer();
    }
    sa *= s;
  }
  binv_ = unimodular_inverse(std::move(B));
}

std::vector<Element> RelativeStructure::coefficients(const Element& x) const {
  const RingPtr& S = hom_.source();
  const RingPtr& T = hom_.target();
  if (!x.ring()->equivalent(*T)) throw Error(Errc::RingMismatch, "element not in the extension");
  auto K = T->base();
  const int eS = S->e(), eT = T->e(), d = T->d();
  // the stored integral part is known modulo pi^Ps
  const long Ps = x.precision() + static_cast<long>(eT) * x.shift();
  std::vector<Element> v;
  v.reserve(eT);
  for (int k = 0; k < eT; ++k) {
    std::vector<mpz_class> c(x.stored().begin() + k * d, x.stored().begin() + (k + 1) * d);
    v.emplace_back(K, std::move(c), K->cap());
  }
  std::vector<Element> w = identity_basis_ ? v : mat_vec(binv_, v);
  std::vector<Element> out;
  for (int i = 0; i < m_; ++i) {
    Element acc = S->zero();
    Element spow = S->one();
    for (int a = 0; a < eS; ++a) {
      // basis element s^a pi^i has valuation a m + i, so an error of valuation
      // >= Ps changes its coordinate only modulo p^ceil((Ps - a m - i)/eT)
      const long kp = ceil_div(Ps - static_cast<long>(a) * m_ - i, eT);
      if (kp <= 0) throw Error(Errc::PrecisionExhausted, "coordinate beyond known precision");
      Element c = w[a * m_ + i].with_precision(kp).mul_p_power(-x.shift());
      acc += S->embed(c) * spow;
      if (a + 1 < eS) spow *= S->uniformizer();
    }
    out.push_back(acc);
  }
  return out;
}

Matrix RelativeStructure::multiplication_matrix(const Element& x) const {
  const RingPtr& S = hom_.source();
  Matrix M(m_, std::vector<Element>(m_, S->zero()));
  Element col = x;
  for (int j = 0; j < m_; ++j) {
    auto c = coefficients(col);
    for (int i = 0; i < m_; ++i) M[i][j] = c[i];
    if (j + 1 < m_) col *= hom_.target()->uniformizer();
  }
  return M;
}

Element RelativeStructure::trace(const Element& x) const {
  Matrix M = multiplication_matrix(x);
  Element t = hom_.source()->zero();
  for (int i = 0; i < m_; ++i) t += M[i][i];
  return t;
}

Element RelativeStructure::norm(const Element& x) const { return determinant(multiplication_matrix(x)); }

Element RelativeStructure::preimage(const Element& x) const {
  auto c = coefficients(x);
  for (int i = 1; i < m_; ++i)
    if (!c[i].is_zero())
      throw Error(Errc::NotInSubfield, "coordinate " + std::to_string(i) + " has valuation " +
                                           std::to_string(c[i].valuation()) + " below its precision " +
                                           std::to_string(c[i].precision()));
  return c[0];
}

RingPtr eisenstein_from_poly(const RingPtr& K, const Poly& monic, const std::string& label) {
  std::vector<Element> lower(monic.begin(), monic.end() - 1);
  return Ring::eisenstein(K, lower, label);
}

Poly Tower::psi() const {
  const int p = K->p();
  Poly lin{u.mul_int(p), K->one()};  // X + u p
  Poly f = poly_mul(Poly{K->zero(), K->one()}, poly_pow(lin, p - 1));
  f[0] += K->from_int(p);
  return f;
}

Tower build_tower(const RingPtr& K, const Element& u) {
  if (!u.ring()->equivalent(*K)) throw Error(Errc::RingMismatch, "u must lie in O_K");
  if (!u.is_unit()) throw Error(Errc::NotAUnit, "u is not a unit");
  const mpz_class qm1 = K->ppow(K->d()) - 1;
  if (!equal_to_precision(u.pow(qm1), K->one())) throw Error(Errc::NotAUnit, "u is not a Teichmuller lift");
  const int p = K->p();
  Tower tw;
  tw.K = K;
  tw.u = u;

  Poly kp(p - 1, K->zero());
  kp[0] = K->from_int(p);
  kp.push_back(K->one());
  tw.Kp = eisenstein_from_poly(K, kp, "K'");

  Poly fu = lubin_tate_poly(u);
  Poly eL = poly_pow(fu, p - 1);
  eL[0] += K->from_int(p);
  tw.L = eisenstein_from_poly(K, eL, "L_u");

  tw.M = eisenstein_from_poly(K, tw.psi(), "M_u");

  const Element w = tw.L->uniformizer();
  tw.K_to_Kp = RingHom::base_embedding(K, tw.Kp);
  tw.K_to_L = RingHom::base_embedding(K, tw.L);
  tw.K_to_M = RingHom::base_embedding(K, tw.M);
  tw.Kp_to_L = RingHom(tw.Kp, tw.L, w.pow(p) + tw.L->embed(u).mul_int(p) * w);
  tw.M_to_L = RingHom(tw.M, tw.L, w.pow(p - 1));
  return tw;
}

std::vector<Element> hensel_conjugates(const Tower& tw) {
  const RingPtr& M = tw.M;
  const int p = M->p();
  const Element t = tw.t();
  // G(z) = psi(t + t^2 z) / t^{2p}
  Poly taylor = poly_taylor(poly_embed(tw.psi(), M), t);
  const Element tinv = t.inverse();
  Poly G(p + 1, M->zero());
  for (int k = 1; k <= p; ++k) G[k] = taylor[k] * tinv.pow(2L * (p - k));
  for (int k = 0; k <= p; ++k)
    if (!G[k].is_zero() && G[k].valuation() < 0)
      throw Error(Errc::CheckFailed, "rescaled polynomial not integral");
  const Poly dG = poly_derivative(G);

  FiniteField k(p, M->d());
  auto K = M->base();
  auto residue_of = [&](const Element& x) { return residue_code(x.coefficient(0).with_precision(1)); };
  std::vector<int> gcode;
  for (const auto& c : G) gcode.push_back(c.is_zero() ? 0 : (c.valuation() > 0 ? 0 : residue_of(c)));

  std::vector<Element> roots;
  for (int z = 0; z < k.q(); ++z) {
    int acc = 0;
    for (int i = p; i >= 0; --i) acc = k.add(k.mul(acc, z), gcode[i]);
    if (acc != 0) continue;
    Element zz = M->embed(from_residue_code(K, z));
    for (int it = 0; it < 200; ++it) {
      const Element g = poly_eval(G, zz);
      if (g.is_zero()) break;
      zz = zz - g * poly_eval(dG, zz).unit_inverse();
    }
    if (!poly_eval(G, zz).is_zero()) throw Error(Errc::RootCountMismatch, "Newton lift did not converge");
    roots.push_back(t + t * t * zz);
  }
  if (static_cast<int>(roots.size()) != p)
    throw Error(Errc::RootCountMismatch,
                "found " + std::to_string(roots.size()) + " residue roots, expected " + std::to_string(p));
  return roots;
}

Element express_in_subfield(const Tower& tw, const Element& x) {
  return RelativeStructure(tw.M_to_L).preimage(x);
}

}  // namespace lt
