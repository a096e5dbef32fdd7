#pragma once

#include <vector>

#include "ocqsl/numerics/complex_matrix.hpp"

namespace ocqsl {

/// Fidelities below exp(kLogFidelityFloor) are reported as 0 in the linear
/// channel; the log channel keeps the value.
inline constexpr double kLogFidelityFloor = -700.0;

/// Dynamical overlap chi(t) on a time grid, with F(t) = |chi(t)|^2.
struct SurvivalSeries {
  std::vector<double> times;
  std::vector<Complex> chi;
  std::vector<double> fidelity;
  /// ln F(t); finite even where `fidelity` has been clamped to 0.
  std::vector<double> log_fidelity;

  std::size_t size() const noexcept { return times.size(); }
  /// Appends one sample given chi as (ln|chi|, phase).
  void push(double t, double log_abs_chi, Complex phase);
};

/// Work statistics of a sudden quench out of an eigenstate of H_i:
/// chi(t) = sum_j weights[j] exp(-i (energies[j] - initial_energy) t).
struct QuenchSpectrum {
  std::vector<double> energies;
  std::vector<double> weights;
  double initial_energy = 0.0;

  /// chi at a single time.
  Complex chi(double t) const;
  SurvivalSeries evaluate(const std::vector<double>& times) const;
};

/// Uniform grid of `count` points on [0, extent].
std::vector<double> uniform_grid(double extent, std::size_t count);

/// Throws DomainError unless the grid starts at 0 and is strictly ascending.
void validate_time_grid(const std::vector<double>& times);

}  // namespace ocqsl
