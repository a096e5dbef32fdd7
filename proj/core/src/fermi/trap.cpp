#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/fermi/hermite.hpp"

namespace ocqsl::fermi {

namespace {

constexpr int kMaxTrapCutoff = 4096;

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("trap quench: eta must be > 0");
}

void check_particles(int n) {
  if (n < 1) throw DomainError("fermi: need at least one particle");
}

// ln of the N = 1 closed form at phase tau.
double log_single_fidelity(double eta, double tau) {
  const double c = std::cos(tau), s = std::sin(tau);
  const double e2 = eta * eta;
  return std::log(2.0 * eta) - 0.5 * std::log(4.0 * e2 * c * c + (e2 + 1.0) * (e2 + 1.0) * s * s);
}

}  // namespace

void TrapQuench::validate() const {
  check_eta(eta);
  check_particles(n_particles);
  if (basis_cutoff != 0 && basis_cutoff < n_particles) {
    throw DomainError("trap quench: basis cutoff must be >= N");
  }
  validate_time_grid(times);
}

SingleParticleBasis trap_overlap_coeffs(double eta, int cutoff, int certified,
                                        const Tolerances& tol) {
  check_eta(eta);
  if (cutoff < 1) throw DomainError("trap_overlap_coeffs: cutoff must be >= 1");
  if (certified < 0) certified = std::max(1, cutoff / 2);
  certified = std::min(certified, cutoff);

  const auto m = static_cast<std::size_t>(cutoff);
  SingleParticleBasis basis;
  basis.energies.resize(m);
  basis.parity.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    basis.energies[i] = eta * reference_energy(static_cast<int>(i));
    basis.parity[i] = static_cast<int>(i % 2);
  }
  basis.coeffs = ComplexMatrix(m, m);

  if (eta == 1.0) {
    basis.coeffs = ComplexMatrix::identity(m);
  } else {
    // psi_k(x) eta^{1/4} psi_m(sqrt(eta) x) = poly * exp(-(1 + eta) x^2 / 2);
    // with x = s y the Gaussian is exp(-y^2), degree k + m <= 2M - 2.
    const int nodes = cutoff + 8;
    const auto rule = gauss_hermite(nodes);
    const double s = std::sqrt(2.0 / (1.0 + eta));
    const double prefactor = s * std::pow(eta, 0.25);
    const double root_eta = std::sqrt(eta);

    std::vector<double> sums(m * m, 0.0);
    for (int i = 0; i < nodes; ++i) {
      const double x = s * rule.nodes[static_cast<std::size_t>(i)];
      const auto u = hermite_functions(cutoff - 1, x);
      const auto v = hermite_functions(cutoff - 1, root_eta * x);
      const double w = rule.scaled_weights[static_cast<std::size_t>(i)];
      for (std::size_t k = 0; k < m; ++k) {
        const double wu = w * u[k];
        if (wu == 0.0) continue;
        double* row = sums.data() + k * m;
        for (std::size_t c = k % 2; c < m; c += 2) row[c] += wu * v[c];
      }
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t c = k % 2; c < m; c += 2) basis.coeffs(k, c) = prefactor * sums[k * m + c];
    }
  }

  basis.certified = certified;
  for (int idx = 0; idx < certified; ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row += std::norm(basis.coeffs(i, j));
      col += std::norm(basis.coeffs(j, i));
    }
    const double defect = std::max(std::abs(1.0 - row), std::abs(1.0 - col));
    basis.completeness_defect = std::max(basis.completeness_defect, defect);
    if (defect > tol.completeness) {
      throw TruncationError("trap_overlap_coeffs: completeness defect " + std::to_string(defect) +
                                " at index " + std::to_string(idx) + " (cutoff " +
                                std::to_string(cutoff) + ")",
                            i, defect);
    }
  }
  return basis;
}

SingleParticleBasis trap_basis(double eta, int n_particles, int cutoff, const Tolerances& tol) {
  check_particles(n_particles);
  if (cutoff > 0) return trap_overlap_coeffs(eta, cutoff, n_particles, tol);
  int m = std::max(2 * n_particles, 32);
  for (;;) {
    try {
      return trap_overlap_coeffs(eta, m, n_particles, tol);
    } catch (const TruncationError&) {
      if (2 * m > kMaxTrapCutoff) throw;
      m *= 2;
    }
  }
}

double calibrate_trap_time_scale(double eta) {
  check_eta(eta);
  if (eta == 1.0) return 1.0;
  const auto basis = trap_basis(eta, 1);
  const std::vector<double> probe{0.0, 0.3, 0.7, 1.1, 1.9, 2.6};
  const auto series = survival_series_det(basis, 1, probe);
  double best_scale = 0.0, best_dev = INFINITY;
  for (double candidate : {1.0, eta}) {
    double dev = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double analytic = std::exp(log_single_fidelity(eta, candidate * probe[i]));
      dev = std::max(dev, std::abs(series.fidelity[i] - analytic));
    }
    if (dev < best_dev) {
      best_dev = dev;
      best_scale = candidate;
    }
  }
  if (best_dev > 1e-6) {
    throw Error("calibrate_trap_time_scale: no time unit reproduces the closed form (dev " +
                std::to_string(best_dev) + ")");
  }
  return best_scale;
}

LogValue fidelity_static_analytic(double eta, int n_particles) {
  check_eta(eta);
  check_particles(n_particles);
  const double n2 = static_cast<double>(n_particles) * n_particles;
  LogValue out;
  out.log = n2 * (std::log(2.0) + 0.5 * std::log(eta) - std::log1p(eta));
  out.value = out.log < kLogFidelityFloor ? 0.0 : std::exp(out.log);
  return out;
}

LogValue fidelity_dynamic_analytic(double eta, int n_particles, double t) {
  check_eta(eta);
  check_particles(n_particles);
  const double n2 = static_cast<double>(n_particles) * n_particles;
  LogValue out;
  out.log = n2 * log_single_fidelity(eta, trap_time_scale(eta) * t);
  out.value = out.log < kLogFidelityFloor ? 0.0 : std::exp(out.log);
  return out;
}

ClosedFormDeltaH delta_h_closed_form(double eta, int n_particles) {
  check_eta(eta);
  check_particles(n_particles);
  const double n = n_particles;
  double sum = 0.0;
  for (int k = 1; k <= n_particles; ++k) sum += std::sqrt(double(k) * k - k + 1.0);
  const double e = eta * eta - 1.0;
  return {e / (2.0 * std::numbers::sqrt2 * n) * sum, n * e / (4.0 * std::numbers::sqrt2)};
}

double mean_work_closed_form(double eta, int n_particles) {
  check_eta(eta);
  check_particles(n_particles);
  return n_particles * (eta * eta - 1.0) / 4.0;
}

double t_min_large_n_periods(double eta, int n_particles, double theta) {
  check_eta(eta);
  check_particles(n_particles);
  if (!(theta > 0.0) || theta > 1.0) throw DomainError("t_min: theta must lie in (0, 1]");
  if (eta == 1.0) return theta == 1.0 ? 0.0 : INFINITY;
  return 2.0 * eta / (std::numbers::pi * n_particles) * std::sqrt(std::log(1.0 / (theta * theta))) /
         std::abs(eta * eta - 1.0);
}

TminResult t_min(double eta, int n_particles, double theta) {
  check_eta(eta);
  check_particles(n_particles);
  if (!(theta > 0.0) || theta > 1.0) throw DomainError("t_min: theta must lie in (0, 1]");

  const double n2 = static_cast<double>(n_particles) * n_particles;
  const double e2 = eta * eta;
  const double pi = std::numbers::pi;
  TminResult out;
  out.large_n_periods = t_min_large_n_periods(eta, n_particles, theta);
  if (theta == 1.0) {
    out.exact_periods = 0.0;
    out.large_n_periods = 0.0;
    return out;
  }

  // F(tau) is monotone decreasing on [0, pi/2]; its floor sits at pi/2.
  const double log_theta = std::log(theta);
  const double log_floor = n2 * log_single_fidelity(eta, 0.5 * pi);
  if (log_theta < log_floor) {
    throw BelowDynamicalFloor("t_min: theta = " + std::to_string(theta) +
                                  " is below the dynamical floor min F = exp(" +
                                  std::to_string(log_floor) + ")",
                              std::exp(log_floor));
  }
  double lo = 0.0, hi = 0.5 * pi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (n2 * log_single_fidelity(eta, mid) > log_theta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.phase = 0.5 * (lo + hi);
  out.internal = out.phase / trap_time_scale(eta);
  out.numeric_periods = out.phase / pi;

  const double q = std::pow(theta, -2.0 / n2);
  const double radicand = 1.0 + e2 * e2 + e2 * (2.0 - 4.0 * q);
  if (radicand > 0.0) {
    const double arg = (e2 - 1.0) / std::sqrt(radicand);
    if (arg >= 1.0) out.exact_periods = std::acos(1.0 / arg) / pi;
  }
  return out;
}

ComplexMatrix trap_final_hamiltonian(double eta, int size) {
  check_eta(eta);
  if (size < 1) throw DomainError("trap_final_hamiltonian: size must be >= 1");
  // h_f = h_i + (eta^2 - 1)/2 x^2; <k|x^2|k> = (2k+1)/2, <k|x^2|k+2> = sqrt((k+1)(k+2))/2.
  const double c = 0.5 * (eta * eta - 1.0);
  ComplexMatrix h(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) {
    const auto i = static_cast<std::size_t>(k);
    h(i, i) = reference_energy(k) + c * (2.0 * k + 1.0) / 2.0;
    if (k + 2 < size) {
      const double off = c * std::sqrt((k + 1.0) * (k + 2.0)) / 2.0;
      h(i, i + 2) = off;
      h(i + 2, i) = off;
    }
  }
  return h;
}

double many_body_variance(const TrapQuench& spec) {
  check_eta(spec.eta);
  check_particles(spec.n_particles);
  return slater_energy_spread(trap_final_hamiltonian(spec.eta, spec.n_particles + 2),
                              spec.n_particles);
}

}  // namespace ocqsl::fermi
