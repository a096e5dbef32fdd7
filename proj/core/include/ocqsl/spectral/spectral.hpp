#pragma once

#include <string>
#include <vector>

#include "ocqsl/survival.hpp"

namespace ocqsl::spectral {

enum class Window { none, hann };

Window parse_window(const std::string& name);
std::string to_string(Window window);

/// S(omega) on a uniform angular-frequency grid.
///
/// The K samples chi(n dt), n = 0..K-1, are extended to n = -(K-1)..-1 by
/// chi(-t) = conj(chi(t)) and transformed as
///
///   S(omega_k) = dt * sum_n w_n chi_n exp(i omega_k n dt),
///   omega_k = 2 pi k / (L dt),  k = -(K-1)..K-1,  L = 2K - 1,
///
/// which equals 2 Re of the one-sided transform and is real term by term.
/// Parseval: dt * sum_n |w_n chi_n|^2 = (d_omega / 2 pi) * sum_k S_k^2.
struct SpectralFunction {
  std::vector<double> omegas;
  std::vector<double> values;
  double dt = 0.0;
  Window window = Window::none;
  std::string normalization;
};

/// Hann weights 0.5 (1 + cos(pi n / K)) on |n| < K; none gives 1.
double window_weight(Window window, long n, std::size_t k);

/// Throws DomainError for fewer than 2 samples or a non-uniform grid.
SpectralFunction spectral_function(const SurvivalSeries& series, Window window = Window::none);

/// Full width of the connected region around the global maximum where
/// S >= fraction * max S, with linear interpolation at both edges.
double peak_width(const SpectralFunction& s, double fraction = 0.5);

/// Frequency of the global maximum.
double peak_position(const SpectralFunction& s);

}  // namespace ocqsl::spectral
