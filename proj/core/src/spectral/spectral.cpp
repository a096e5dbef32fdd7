#include "ocqsl/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ocqsl/error.hpp"

namespace ocqsl::spectral {

Window parse_window(const std::string& name) {
  if (name == "none") return Window::none;
  if (name == "hann") return Window::hann;
  throw DomainError("unknown window '" + name + "' (expected none or hann)");
}

std::string to_string(Window window) { return window == Window::hann ? "hann" : "none"; }

double window_weight(Window window, long n, std::size_t k) {
  if (window == Window::none) return 1.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(n) / static_cast<double>(k)));
}

SpectralFunction spectral_function(const SurvivalSeries& series, Window window) {
  const std::size_t k = series.size();
  if (k < 2 || series.chi.size() != k) throw DomainError("spectral_function: need >= 2 samples");
  if (series.times.front() != 0.0) throw DomainError("spectral_function: grid must start at 0");
  const double dt = series.times.back() / static_cast<double>(k - 1);
  if (!(dt > 0.0)) throw DomainError("spectral_function: time grid is not ascending");
  // Loose enough for grids read back from 12-digit CSV.
  for (std::size_t n = 1; n < k; ++n) {
    if (!(std::abs(series.times[n] - static_cast<double>(n) * dt) <= 1e-6 * dt)) {
      throw DomainError("spectral_function: time grid is not uniform");
    }
  }

  const std::size_t l = 2 * k - 1;
  // exp(2 pi i r / L), indexed by (k n) mod L so every phase is exact.
  std::vector<Complex> twiddle(l);
  for (std::size_t r = 0; r < l; ++r) {
    twiddle[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(l));
  }
  std::vector<Complex> weighted(k);
  for (std::size_t n = 0; n < k; ++n) {
    weighted[n] = window_weight(window, static_cast<long>(n), k) * series.chi[n];
  }

  SpectralFunction s;
  s.dt = dt;
  s.window = window;
  s.normalization =
      "S(w_k) = dt * sum_{n=-(K-1)}^{K-1} w_n chi_n exp(i w_k n dt), chi_{-n} = conj(chi_n), "
      "w_k = 2 pi k / ((2K-1) dt)";
  s.omegas.reserve(l);
  s.values.reserve(l);
  const long half = static_cast<long>(k) - 1;
  for (long kk = -half; kk <= half; ++kk) {
    const std::size_t base = static_cast<std::size_t>((kk % static_cast<long>(l) + static_cast<long>(l)) %
                                                      static_cast<long>(l));
    double acc = weighted[0].real();
    std::size_t idx = 0;
    for (std::size_t n = 1; n < k; ++n) {
      idx += base;
      if (idx >= l) idx -= l;
      acc += 2.0 * (weighted[n] * twiddle[idx]).real();
    }
    s.omegas.push_back(2.0 * std::numbers::pi * static_cast<double>(kk) / (static_cast<double>(l) * dt));
    s.values.push_back(dt * acc);
  }
  return s;
}

double peak_position(const SpectralFunction& s) {
  if (s.values.empty()) throw DomainError("peak_position: empty spectrum");
  const auto it = std::max_element(s.values.begin(), s.values.end());
  return s.omegas[static_cast<std::size_t>(it - s.values.begin())];
}

double peak_width(const SpectralFunction& s, double fraction) {
  if (s.values.size() < 2) throw DomainError("peak_width: need >= 2 samples");
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("peak_width: fraction must be in (0, 1)");
  const auto it = std::max_element(s.values.begin(), s.values.end());
  const std::size_t p = static_cast<std::size_t>(it - s.values.begin());
  const double level = fraction * *it;
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double a = s.values[inside], b = s.values[outside];
    return s.omegas[inside] + (a - level) / (a - b) * (s.omegas[outside] - s.omegas[inside]);
  };
  std::size_t lo = p;
  while (lo > 0 && s.values[lo - 1] >= level) --lo;
  std::size_t hi = p;
  while (hi + 1 < s.values.size() && s.values[hi + 1] >= level) ++hi;
  const double left = lo > 0 ? crossing(lo, lo - 1) : s.omegas.front();
  const double right = hi + 1 < s.values.size() ? crossing(hi, hi + 1) : s.omegas.back();
  return right - left;
}

}  // namespace ocqsl::spectral
