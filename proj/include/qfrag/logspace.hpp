#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace qfrag {

/// log Σ_i exp(x_i), shifted by the maximum so nothing overflows.
/// -inf entries contribute nothing; an empty or all -inf input gives -inf.
inline double log_sum_exp(std::span<const double> xs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : xs) top = std::max(top, x);
  if (!std::isfinite(top)) return top;
  long double acc = 0.0L;
  for (double x : xs) acc += std::exp(static_cast<long double>(x - top));
  return top + static_cast<double>(std::log(acc));
}

}  // namespace qfrag
