#include "lt/classfield.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "lt/error.hpp"
#include "lt/extensions.hpp"
#include "lt/linalg.hpp"
#include "lt/padic.hpp"

namespace lt {

bool z_membership(const Element& x) {
  const Element t = trace_to_qp(x);
  return t.is_zero() || t.valuation() >= 1;
}

std::vector<int> trace_kernel(const FiniteField& k, int v) {
  const int vp = k.frobenius(v);
  std::vector<int> out;
  for (int y = 0; y < k.q(); ++y)
    if (k.trace(k.mul(vp, y)) == 0) out.push_back(y);
  return out;
}

CorrespondenceReport subextension_correspondence(const FiniteField& k) {
  CorrespondenceReport rep;
  rep.points = projective_points(k);
  std::set<std::vector<int>> seen;
  for (int v : rep.points) {
    rep.kernels.push_back(trace_kernel(k, v));
    if (!seen.insert(rep.kernels.back()).second)
      throw Error(Errc::DuplicateFingerprint, "two points of P(k) share the kernel of v = " + std::to_string(v));
  }
  return rep;
}

namespace {

bool contains(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

LineReport line_containment(const FiniteField& k, int v, int v1, int v2) {
  LineReport rep;
  const int x = k.frobenius(v), x1 = k.frobenius(v1), x2 = k.frobenius(v2);
  for (int a = 0; a < k.p() && !rep.by_span; ++a)
    for (int b = 0; b < k.p(); ++b) {
      const int s = k.add(k.scale(a, x1), k.scale(b, x2));
      if (s != 0 && s == x) {
        rep.by_span = true;
        break;
      }
    }
  rep.by_kernel = contains(trace_kernel(k, v), intersect(trace_kernel(k, v1), trace_kernel(k, v2)));
  return rep;
}

std::vector<int> line_points(const FiniteField& k, int v1, int v2) {
  std::vector<int> out;
  for (int v : projective_points(k))
    if (line_containment(k, v, v1, v2).by_span) out.push_back(v);
  return out;
}

EquivarianceReport frobenius_equivariance(const FiniteField& k) {
  EquivarianceReport rep;
  const int p = k.p();
  std::set<int> by_kernel, by_power;
  for (int v : projective_points(k)) {
    const auto ker = trace_kernel(k, v);
    const int sv = k.frobenius(v);
    const auto ker_s = trace_kernel(k, sv);
    std::vector<int> image;
    for (int y : ker) image.push_back(k.frobenius(y));
    std::sort(image.begin(), image.end());
    if (image != ker_s) rep.equivariant = false;
    const int u = k.pow(v, 1 - p);
    if (ker_s == ker) by_kernel.insert(u);
    if (k.frobenius(u) == u) by_power.insert(u);
  }
  rep.fixed_by_kernel.assign(by_kernel.begin(), by_kernel.end());
  rep.fixed_by_power.assign(by_power.begin(), by_power.end());
  return rep;
}

NormIdentityReport norm_identity_check(const RingPtr& K, int v_code, int w_code) {
  const int p = K->p();
  const Element v = teichmuller_lift(K, v_code);
  const Element w = teichmuller_lift(K, w_code);
  if (v.is_zero() || w.is_zero()) throw Error(Errc::NotAUnit, "v and w must be nonzero residues");
  const Tower tw = build_tower(K, v.pow(1L - p));
  const RelativeStructure MK(tw.K_to_M);
  const Element c = w * v.unit_inverse();
  const Element cM = tw.M->embed(c);
  const Element y = tw.M->one() + tw.t() * cM;
  NormIdentityReport rep;
  rep.v = v_code;
  rep.w = w_code;
  rep.norm = MK.norm(-cM * y);
  rep.rhs = K->one() + v.pow(static_cast<long>(-p)) * (w - w.pow(static_cast<long>(p))).mul_int(p);
  rep.literal_residual = (rep.norm - rep.rhs).valuation();
  rep.negated_residual = (rep.norm + rep.rhs).valuation();
  rep.corrected_residual = (MK.norm(y) - rep.rhs).valuation();
  return rep;
}

namespace {

// rank over F_p of the rows (each a vector of d digits)
int rank_mod_p(std::vector<std::vector<int>> m, int p) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % p) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    int inv = 1;
    while (m[r][c] * inv % p != 1) ++inv;
    for (auto& x : m[r]) x = x * inv % p;
    for (int i = 0; i < rows; ++i)
      if (i != r && m[i][c]) {
        const int f = m[i][c];
        for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

}  // namespace

Element normal_basis_eta(const RingPtr& K) {
  const FiniteField k(K->p(), K->d());
  for (int x = 1; x < k.q(); ++x) {
    std::vector<std::vector<int>> orbit;
    int y = x;
    for (int i = 0; i < k.d(); ++i) {
      orbit.push_back(k.digits(y));
      y = k.frobenius(y);
    }
    if (rank_mod_p(orbit, k.p()) == k.d()) {
      if (k.trace(x) == 0) throw Error(Errc::CheckFailed, "normal basis generator with zero trace");
      return teichmuller_lift(K, x);
    }
  }
  throw Error(Errc::CheckFailed, "no normal basis generator");
}

Element decomposition_determinant(const Element& eta) {
  const RingPtr& K = eta.ring();
  const int p = K->p(), d = K->d();
  auto Zp = Ring::unramified(p, 1, K->digits());
  std::vector<Element> cols{eta};
  mpz_class pk = p;
  for (int i = 1; i < d; ++i) {
    cols.push_back(eta.pow(pk) - eta.pow(pk * p));
    pk *= p;
  }
  Matrix m(d, std::vector<Element>(d, Zp->zero()));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (!cols[j].is_integral()) throw Error(Errc::IntegralityViolation, "non-integral basis vector");
      m[i][j] = Element(Zp, {cols[j].stored()[i]}, std::min<long>(cols[j].precision(), Zp->cap()));
    }
  return determinant(m);
}

namespace {

std::vector<mpz_class> key_of(const Element& x) { return {x.stored().begin(), x.stored().end()}; }

}  // namespace

UnitGroupReport unit_group_decomposition(int p, int d) {
  auto K = Ring::unramified(p, d, 2);
  const Element eta = normal_basis_eta(K);
  UnitGroupReport rep;
  rep.expected = static_cast<int>(K->ppow(d).get_si());
  std::vector<Element> gens;
  mpz_class pk = 1;
  for (int i = 0; i < d; ++i) {
    gens.push_back(K->one() + eta.pow(pk).mul_int(p));
    pk *= p;
  }
  for (int i = 0; i < d; ++i) {
    const Element& g = gens[i];
    rep.generators_order_p = rep.generators_order_p && !equal_to_precision(g, K->one()) &&
                             equal_to_precision(g.pow(static_cast<long>(p)), K->one());
    rep.frobenius_shifts = rep.frobenius_shifts && equal_to_precision(frobenius(g), gens[(i + 1) % d]);
  }
  std::map<std::vector<mpz_class>, Element> group;
  std::vector<Element> frontier{K->one()};
  group.emplace(key_of(K->one()), K->one());
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Element y = x * g;
        if (group.emplace(key_of(y), y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  rep.generated = static_cast<int>(group.size());
  FiniteField k(p, d);
  std::set<int> classes;
  for (const auto& [key, y] : group) {
    const Element z = y - K->one();
    if (!z.is_zero() && z.valuation() < 1) throw Error(Errc::CheckFailed, "generated element outside 1 + P");
    classes.insert(residue_code(z.mul_p_power(-1).with_precision(1)));
  }
  rep.classes = static_cast<int>(classes.size());
  return rep;
}

WreathReport wreath_model(int p, int d) {
  using Perm = std::vector<int>;
  const int n = p * d;
  auto compose = [&](const Perm& a, const Perm& b) {  // a after b
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = a[b[i]];
    return r;
  };
  auto power = [&](const Perm& a, int k) {
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = i;
    for (int j = 0; j < k; ++j) r = compose(a, r);
    return r;
  };
  Perm id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  // point (block i, position j) is i * p + j
  std::vector<Perm> g(d, id);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < p; ++j) g[i][i * p + j] = i * p + (j + 1) % p;
  Perm sigma(n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < p; ++j) sigma[i * p + j] = ((i + 1) % d) * p + j;
  const Perm sigma_inv = power(sigma, d - 1);

  WreathReport rep;
  rep.expected = static_cast<std::int64_t>(d);
  for (int i = 0; i < d; ++i) rep.expected *= p;
  rep.relations = power(sigma, d) == id;
  for (int i = 0; i < d; ++i) {
    rep.relations = rep.relations && power(g[i], p) == id;
    rep.relations = rep.relations && compose(compose(sigma, g[i]), sigma_inv) == g[(i + 1) % d];
    for (int j = 0; j < d; ++j) rep.relations = rep.relations && compose(g[i], g[j]) == compose(g[j], g[i]);
  }
  std::vector<Perm> gens = g;
  gens.push_back(sigma);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        Perm y = compose(s, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  rep.order = static_cast<std::int64_t>(seen.size());
  return rep;
}

namespace {

Series lt_poly_series(const RingPtr& K, int D) {
  const int p = K->p();
  const long q = K->ppow(K->d()).get_si();
  Series h(K, D);
  if (D >= 1) h.set(1, K->from_int(p));
  if (q <= D) h.set(static_cast<int>(q), h[static_cast<int>(q)] + K->one());
  return h;
}

Series series_pow(const Series& f, long n) {
  Series r = Series::one(f.ring(), f.cap());
  Series b = f;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

// h(f) - f(h)
Series lt_defect(const Series& f) {
  const RingPtr& K = f.ring();
  const long q = K->ppow(K->d()).get_si();
  const Series h = lt_poly_series(K, f.cap());
  return series_pow(f, q) + f.scale(K->from_int(K->p())) - f.compose(h);
}

}  // namespace

Series lubin_tate_endo(const Element& a, int D) {
  const RingPtr& K = a.ring();
  if (!K->is_unramified()) throw Error(Errc::RingMismatch, "[a] needs a in O_K");
  const int p = K->p();
  Series f(K, D);
  if (D >= 1) f.set(1, a);
  mpz_class pm = p;
  for (int m = 2; m <= D; ++m) {
    pm *= p;
    // coefficient m of the defect with c_m = 0 equals (p^m - p) c_m
    const Element R = lt_defect(f.truncate(m))[m];
    const Element pivot = K->from_mpz(pm - p);
    if (pivot.valuation() != 1) throw Error(Errc::PivotNotUnit, "pivot p^m - p has valuation != 1");
    f.set(m, R * pivot.inverse());
  }
  return f;
}

long lubin_tate_residual(const Series& f) {
  const Series r = lt_defect(f);
  long worst = std::numeric_limits<long>::max();
  for (int n = 0; n <= r.cap(); ++n) worst = std::min(worst, r[n].valuation() - r[n].precision());
  return worst;
}

}  // namespace lt
