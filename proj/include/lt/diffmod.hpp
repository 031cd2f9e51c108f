#pragma once

#include "lt/context.hpp"
#include "lt/extensions.hpp"
#include "lt/series.hpp"

namespace lt {

/// The connection d_X - g on the free rank-one module, d_X = X d/dX.
struct RankOneConnection {
  Series g;
};

/// Absolute Frobenius on the series ring: phi_coeff on coefficients, X -> X^p.
/// The pullback of d_X - g is d_X - p phi(g).
struct FrobeniusDescriptor {
  RingHom coeff;
};

/// g + d_X(f)/f. Throws Error(NonUnitLeadingTerm) unless f(0) is a unit.
Series gauge_transform(const Series& g, const Series& f);

/// p phi_coeff(g)(X^p). Throws Error(DegreeOverflow) if p deg(g) exceeds the cap.
RankOneConnection frobenius_pullback(const RankOneConnection& m, const FrobeniusDescriptor& phi);

struct FrobeniusStructureReport {
  int p = 0, n = 0, u = 0;  // u as a residue code
  int D = 0, N = 0;
  long residual_digits = 0;  // min over coefficients of the known p-adic digits of the residual
  bool pass = false;
};

/// Checks gauge_transform(g, E_{u,n}(-X)) = frobenius_pullback(g) for
/// g = sum_{i<n} omega_{n-i} X^{p^i} and phi(omega_m) = u omega_m, modulo
/// (X^{D+1}, p^N). u must satisfy u^p = u. Throws
/// Error(IdentityResidualNonzero) naming the first bad coefficient.
FrobeniusStructureReport verify_frobenius_structure(const PrecisionContext& ctx, const Element& u, int n);

}  // namespace lt
