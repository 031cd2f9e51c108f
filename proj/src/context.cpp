#include "lt/context.hpp"

#include <string>

#include "lt/error.hpp"

namespace lt {

std::int64_t PrecisionContext::q() const {
  std::int64_t r = 1;
  for (int i = 0; i < d; ++i) r *= p;
  return r;
}

PrecisionContext PrecisionContext::make(int p, int d, int N, int D) {
  PrecisionContext ctx{p, d, N, D, 0};
  ctx.guard = min_guard(p, D);
  return ctx;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

void PrecisionContext::validate(bool series_exponentials) const {
  if (p < 3 || !is_prime(p))
    throw Error(Errc::ConfigError, "p must be an odd prime, got " + std::to_string(p));
  if (d < 1) throw Error(Errc::ConfigError, "d must be >= 1");
  if (N < 1) throw Error(Errc::ConfigError, "N must be >= 1");
  if (D < 1) throw Error(Errc::ConfigError, "D must be >= 1");
  if (guard < 0) throw Error(Errc::ConfigError, "guard must be >= 0");
  if (series_exponentials && guard < min_guard(p, D))
    throw Error(Errc::ConfigError, "guard " + std::to_string(guard) + " below ceil(D/(p-1))+2 = " +
                                       std::to_string(min_guard(p, D)));
}

}  // namespace lt
