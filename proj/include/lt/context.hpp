#pragma once

#include <cstdint>

namespace lt {

/// Global parameters shared by a computation: the odd prime p, the degree d
/// of the unramified base K, the target precision N (p-adic digits), the
/// series degree cap D and the number of guard digits carried on top of N.
struct PrecisionContext {
  int p = 3;
  int d = 1;
  int N = 12;
  int D = 256;
  int guard = 0;

  std::int64_t q() const;
  int working_digits() const { return N + guard; }

  /// Smallest guard that covers the v_p(n!) <= (n-1)/(p-1) loss of a degree-D
  /// exponential.
  static int min_guard(int p, int D) { return (D + p - 2) / (p - 1) + 2; }

  /// Context with the guard set to min_guard(p, D).
  static PrecisionContext make(int p, int d, int N, int D);

  /// Throws Error(ConfigError) when p is not an odd prime, d < 1, N < 1,
  /// D < 1, or (if `series_exponentials`) the guard is below min_guard.
  void validate(bool series_exponentials = true) const;
};

bool is_prime(std::int64_t n);

}  // namespace lt
