#include "lt/linalg.hpp"

#include "lt/error.hpp"

namespace lt {

Matrix identity_matrix(const RingPtr& R, int n) {
  Matrix m(n, std::vector<Element>(n, R->zero()));
  for (int i = 0; i < n; ++i) m[i][i] = R->one();
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  const RingPtr& R = a[0][0].ring();
  Matrix out(n, std::vector<Element>(m, R->zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

std::vector<Element> mat_vec(const Matrix& a, const std::vector<Element>& v) {
  std::vector<Element> out;
  for (const auto& row : a) {
    Element acc = v.at(0).ring()->zero();
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
    out.push_back(acc);
  }
  return out;
}

Element determinant(Matrix a) {
  const int n = static_cast<int>(a.size());
  const RingPtr& R = a[0][0].ring();
  Element det = R->one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    long best = 0;
    for (int r = c; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const long v = a[r][c].valuation();
      if (piv < 0 || v < best) {
        piv = r;
        best = v;
      }
    }
    if (piv < 0) {
      // a column that is zero to precision: the determinant is zero to the
      // precision that column carries
      long prec = a[c][c].precision();
      for (int r = c; r < n; ++r) prec = std::min(prec, a[r][c].precision());
      return (det * R->zero().with_precision(prec));
    }
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Element inv = a[c][c].inverse();
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Element f = a[r][c] * inv;
      for (int k = c + 1; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

Matrix unimodular_inverse(Matrix a) {
  const int n = static_cast<int>(a.size());
  const RingPtr& R = a[0][0].ring();
  Matrix inv = identity_matrix(R, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c].is_unit()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(Errc::PivotNotUnit, "no unit pivot in column " + std::to_string(c));
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Element pinv = a[c][c].unit_inverse();
    for (int k = 0; k < n; ++k) {
      a[c][k] *= pinv;
      inv[c][k] *= pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Element f = a[r][c];
      for (int k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace lt
