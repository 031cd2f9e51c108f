#pragma once

#include <vector>

#include "lt/ring.hpp"

namespace lt {

using Matrix = std::vector<std::vector<Element>>;

Matrix identity_matrix(const RingPtr& R, int n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<Element> mat_vec(const Matrix& a, const std::vector<Element>& v);

/// Determinant by elimination with minimal-valuation pivots.
Element determinant(Matrix a);

/// Inverse of a matrix whose determinant is a unit, by Gauss-Jordan with unit
/// pivots. Throws Error(PivotNotUnit) if no unit pivot is available.
Matrix unimodular_inverse(Matrix a);

}  // namespace lt
