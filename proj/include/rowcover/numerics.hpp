#pragma once

#include <cmath>
#include <cstdint>

namespace rowcover::detail {

// True when 1 - x is representable without rounding.
inline bool exact_complement(double x) {
  const double c = 1.0 - x;
  return 1.0 - c == x && c + x == 1.0;
}

/// (1 - x)^k. Uses integer pow when 1 - x is exact, log1p otherwise.
inline double pow_one_minus(double x, double k) {
  if (k == 0.0) return 1.0;
  if (x == 1.0) return 0.0;
  if (exact_complement(x)) return std::pow(1.0 - x, k);
  return std::exp(k * std::log1p(-x));
}

/// 1 - (1 - x)^k without cancellation for small x.
inline double one_minus_pow_one_minus(double x, double k) {
  if (k == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return -std::expm1(k * std::log1p(-x));
}

}  // namespace rowcover::detail
