#pragma once

#include <cmath>

namespace deforma::detail {

// Shared truncation policy for the deformed exponentials and Jackson sums.
inline constexpr double kSeriesTolerance = 1e-14;
inline constexpr int kMaxSeriesTerms = 500;

inline bool term_negligible(double term, double sum, double tol) {
  return term == 0.0 || std::abs(term) < tol * std::abs(sum);
}

}  // namespace deforma::detail
