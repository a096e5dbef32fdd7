#pragma once

#include <span>

namespace ocqsl {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Coefficient of determination, clamped to [0, 1]. 1 when ys are constant.
  double r_squared = 1.0;
};

/// Ordinary least-squares line through (xs, ys).
/// Throws DomainError on length mismatch or fewer than two distinct abscissae.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace ocqsl
