#include "ocqsl/survival.hpp"

#include <cmath>

#include "ocqsl/error.hpp"

namespace ocqsl {

void SurvivalSeries::push(double t, double log_abs_chi, Complex phase) {
  times.push_back(t);
  const double log_f = 2.0 * log_abs_chi;
  log_fidelity.push_back(log_f);
  if (log_f < kLogFidelityFloor) {
    fidelity.push_back(0.0);
    chi.push_back(0.0);
  } else {
    fidelity.push_back(std::exp(log_f));
    chi.push_back(phase * std::exp(log_abs_chi));
  }
}

Complex QuenchSpectrum::chi(double t) const {
  Complex sum = 0.0;
  for (std::size_t j = 0; j < energies.size(); ++j) {
    if (weights[j] == 0.0) continue;
    sum += weights[j] * std::polar(1.0, -(energies[j] - initial_energy) * t);
  }
  return sum;
}

SurvivalSeries QuenchSpectrum::evaluate(const std::vector<double>& times) const {
  SurvivalSeries series;
  series.times.reserve(times.size());
  for (double t : times) {
    const Complex c = chi(t);
    const double a = std::abs(c);
    series.push(t, a > 0.0 ? std::log(a) : -INFINITY, a > 0.0 ? c / a : Complex(1.0));
  }
  return series;
}

std::vector<double> uniform_grid(double extent, std::size_t count) {
  if (count < 2 || !(extent > 0.0)) throw DomainError("uniform_grid: need count >= 2, extent > 0");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = extent * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

void validate_time_grid(const std::vector<double>& times) {
  if (times.empty()) throw DomainError("time grid is empty");
  if (times.front() != 0.0) throw DomainError("time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("time grid must be strictly ascending");
  }
}

}  // namespace ocqsl
