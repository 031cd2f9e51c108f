#include "lt/diffmod.hpp"

#include <algorithm>
#include <limits>

#include "lt/error.hpp"
#include "lt/exponentials.hpp"
#include "lt/padic.hpp"

namespace lt {

Series gauge_transform(const Series& g, const Series& f) {
  if (!f[0].is_unit()) throw Error(Errc::NonUnitLeadingTerm, "gauge factor must have a unit constant term");
  return g + f.derivative() * f.inverse();
}

RankOneConnection frobenius_pullback(const RankOneConnection& m, const FrobeniusDescriptor& phi) {
  const Series& g = m.g;
  const int p = g.ring()->p();
  const int D = g.cap();
  const RingPtr& T = phi.coeff.target();
  Series out(T, D);
  for (int k = 0; k <= D; ++k) {
    if (g[k].is_zero()) continue;
    if (static_cast<long>(k) * p > D)
      throw Error(Errc::DegreeOverflow, "p * deg(g) = " + std::to_string(static_cast<long>(k) * p) + " exceeds " +
                                            std::to_string(D));
    out.set(k * p, phi.coeff(g[k]).mul_int(p));
  }
  return {out};
}

FrobeniusStructureReport verify_frobenius_structure(const PrecisionContext& ctx, const Element& u_in, int n) {
  const int p = ctx.p;
  const int D = ctx.D;
  PrecisionContext c = ctx;
  c.guard = std::max(c.guard, PrecisionContext::min_guard(p, D));
  if (!u_in.is_unit() || !equal_to_precision(u_in.pow(static_cast<long>(p)), u_in))
    throw Error(Errc::CheckFailed, "needs a unit u with u^p = u");
  auto K = Ring::unramified(c);
  const Element u = teichmuller_lift(K, residue_code(u_in));
  const CoherentRoots cr = coherent_roots(K, u, n);
  const RingPtr& R = cr.R;

  Series g(R, D);
  long pi = 1;
  for (int i = 0; i < n && pi <= D; ++i, pi *= p) g.set(static_cast<int>(pi), cr.omega[n - i]);

  // omega_m -> u omega_m for all m, since f_u(uX) = u f_u(X)
  const FrobeniusDescriptor phi{RingHom(R, R, R->embed(u) * R->uniformizer(), K->d() > 1 ? 1 : 0)};
  for (int m = 1; m <= n; ++m)
    if (!equal_to_precision(phi.coeff(cr.omega[m]), R->embed(u) * cr.omega[m]))
      throw Error(Errc::CheckFailed, "phi does not scale omega_" + std::to_string(m));

  const Series f = e_un_series(cr, n, D).substitute_neg();
  const Series lhs = gauge_transform(g, f);
  const Series rhs = frobenius_pullback({g}, phi).g;

  FrobeniusStructureReport rep;
  rep.p = p;
  rep.n = n;
  rep.u = residue_code(u);
  rep.D = D;
  rep.N = ctx.N;
  rep.residual_digits = std::numeric_limits<long>::max();
  const long e = R->e();
  for (int k = 0; k <= D; ++k) {
    const Element r = lhs[k] - rhs[k];
    const long digits = std::min(r.valuation(), r.precision()) / e;
    rep.residual_digits = std::min(rep.residual_digits, digits);
    if (!r.is_zero() && r.valuation() < static_cast<long>(ctx.N) * e)
      throw Error(Errc::IdentityResidualNonzero, "coefficient " + std::to_string(k) + " has valuation " +
                                                     std::to_string(r.valuation()));
  }
  rep.pass = rep.residual_digits >= ctx.N;
  return rep;
}

}  // namespace lt
