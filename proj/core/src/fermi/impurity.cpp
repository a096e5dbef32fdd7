#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/fermi/hermite.hpp"
#include "ocqsl/numerics/linalg.hpp"

namespace ocqsl::fermi {

namespace {

struct EvenSector {
  std::vector<double> energies;
  ComplexMatrix vectors;  // rows: even orbitals 0, 2, 4, ...
  double coupling = 0.0;
};

// Renormalized coupling for the even orbitals k < cutoff.
double truncated_coupling(double g, int cutoff, double reference, std::span<const double> at_origin) {
  if (g == 0.0) return 0.0;
  double truncated = 0.0;
  for (int k = 0; k < cutoff; k += 2) {
    const double v = at_origin[static_cast<std::size_t>(k)];
    truncated += v * v / (reference - reference_energy(k));
  }
  const double tail = zero_range_green(reference) - truncated;
  return 1.0 / (1.0 / g - tail);
}

EvenSector solve_even_sector(double g, int cutoff, double reference, const Tolerances& tol) {
  const auto at_origin = hermite_functions_at_origin(cutoff - 1);
  const int n_even = (cutoff + 1) / 2;
  EvenSector out;
  out.coupling = truncated_coupling(g, cutoff, reference, at_origin);

  const auto dim = static_cast<std::size_t>(n_even);
  ComplexMatrix h(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const double va = at_origin[2 * a];
    h(a, a) = reference_energy(static_cast<int>(2 * a)) + out.coupling * va * va;
    for (std::size_t b = a + 1; b < dim; ++b) {
      const double hab = out.coupling * va * at_origin[2 * b];
      h(a, b) = hab;
      h(b, a) = hab;
    }
  }
  auto eig = eigh(h, tol);
  out.energies = std::move(eig.eigenvalues);
  out.vectors = std::move(eig.eigenvectors);
  return out;
}

// Lowest `count` levels of both parity sectors merged.
std::vector<double> merged_levels(const std::vector<double>& even, int cutoff, int count) {
  std::vector<double> all = even;
  for (int k = 1; k < cutoff; k += 2) all.push_back(reference_energy(k));
  std::sort(all.begin(), all.end());
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(count)));
  return all;
}

}  // namespace

void ImpurityQuench::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("impurity quench: kappa must be >= 0");
  if (n_particles < 1) throw DomainError("impurity quench: need at least one particle");
  if (basis_cutoff != 0 && basis_cutoff < n_particles) {
    throw DomainError("impurity quench: basis cutoff must be >= N");
  }
  validate_time_grid(times);
}

double zero_range_green(double energy) {
  if (!(energy > -0.5)) throw DomainError("zero_range_green: energy must exceed -1/2");
  // Reflection turns Gamma(1/4 - x) / Gamma(3/4 - x) into positive-argument
  // gammas times a ratio of sines, which stays finite for large x.
  const double x = 0.5 * energy;
  const double pi = std::numbers::pi;
  const double sines = std::sin(pi * (0.75 - x)) / std::sin(pi * (0.25 - x));
  return -0.5 * sines * std::exp(std::lgamma(0.25 + x) - std::lgamma(0.75 + x));
}

std::vector<double> zero_range_even_levels(double g, int count) {
  if (!(g >= 0.0)) throw DomainError("zero_range_even_levels: g must be >= 0");
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    const double pole = 2.0 * j + 0.5;
    if (g == 0.0) {
      out.push_back(pole);
      continue;
    }
    // G decreases from +inf just above the pole to -inf just below the next one.
    const double target = 1.0 / g;
    double lo = pole, hi = pole + 2.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (zero_range_green(mid) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

SingleParticleBasis delta_basis(double kappa, int n_particles, int cutoff, const Tolerances& tol) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("delta_basis: kappa must be >= 0");
  if (n_particles < 1) throw DomainError("delta_basis: need at least one particle");
  if (cutoff < n_particles + 1) throw DomainError("delta_basis: cutoff must exceed N");

  const double g = n_particles * kappa;
  const double reference = static_cast<double>(n_particles);
  const auto even = solve_even_sector(g, cutoff, reference, tol);

  SingleParticleBasis basis;
  if (cutoff < 4 * n_particles) {
    basis.warnings.push_back("delta_basis: cutoff " + std::to_string(cutoff) +
                             " below the recommended floor 4N = " +
                             std::to_string(4 * n_particles));
  }
  basis.coupling = even.coupling;

  // Merge sectors by energy; odd levels first on exact ties.
  struct Level {
    double energy;
    int parity;
    std::size_t index;  // even eigenvector column or odd orbital
  };
  std::vector<Level> levels;
  for (std::size_t j = 0; j < even.energies.size(); ++j) levels.push_back({even.energies[j], 0, j});
  for (int k = 1; k < cutoff; k += 2) {
    levels.push_back({reference_energy(k), 1, static_cast<std::size_t>(k)});
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.parity > b.parity);
  });

  const auto m = static_cast<std::size_t>(cutoff);
  basis.coeffs = ComplexMatrix(m, m);
  basis.energies.resize(m);
  basis.parity.resize(m);
  for (std::size_t col = 0; col < m; ++col) {
    const auto& level = levels[col];
    basis.energies[col] = level.energy;
    basis.parity[col] = level.parity;
    if (level.parity == 1) {
      basis.coeffs(level.index, col) = 1.0;
    } else {
      // Fix the sign so the largest component is positive.
      std::size_t best = 0;
      for (std::size_t a = 0; a < even.energies.size(); ++a) {
        if (std::abs(even.vectors(a, level.index)) > std::abs(even.vectors(best, level.index))) best = a;
      }
      const double sign = even.vectors(best, level.index).real() < 0.0 ? -1.0 : 1.0;
      for (std::size_t a = 0; a < even.energies.size(); ++a) {
        basis.coeffs(2 * a, col) = sign * even.vectors(a, level.index).real();
      }
    }
  }
  basis.certified = cutoff;

  if (g > 0.0) {
    const auto coarse = merged_levels(even.energies, cutoff, n_particles);
    const auto fine_even = solve_even_sector(g, 2 * cutoff, reference, tol);
    const auto fine = merged_levels(fine_even.energies, 2 * cutoff, n_particles);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      basis.cutoff_drift = std::max(basis.cutoff_drift, std::abs(coarse[i] - fine[i]));
    }
    if (basis.cutoff_drift > tol.delta_cutoff_drift) {
      throw ConvergenceError("delta_basis: lowest " + std::to_string(n_particles) +
                                 " levels drift by " + std::to_string(basis.cutoff_drift) +
                                 " when the cutoff doubles from " + std::to_string(cutoff),
                             basis.cutoff_drift);
    }
  }
  return basis;
}

ComplexMatrix impurity_final_hamiltonian(const SingleParticleBasis& basis) {
  const int cutoff = basis.cutoff();
  const auto at_origin = hermite_functions_at_origin(cutoff - 1);
  const auto m = static_cast<std::size_t>(cutoff);
  ComplexMatrix h(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    h(a, a) = reference_energy(static_cast<int>(a)) + basis.coupling * at_origin[a] * at_origin[a];
    for (std::size_t b = a + 1; b < m; ++b) {
      const double hab = basis.coupling * at_origin[a] * at_origin[b];
      h(a, b) = hab;
      h(b, a) = hab;
    }
  }
  return h;
}

double static_log_overlap(const SingleParticleBasis& basis, int n_particles) {
  if (n_particles < 1 || n_particles > basis.cutoff()) {
    throw DomainError("static_log_overlap: N outside the basis");
  }
  const auto n = static_cast<std::size_t>(n_particles);
  return log_determinant(basis.coeffs.block(n, n)).log_abs;
}

AndersonFit anderson_alpha(double kappa, std::span<const int> ns, int cutoff_factor,
                           const Tolerances& tol) {
  if (ns.size() < 3) throw DomainError("anderson_alpha: need at least three particle numbers");
  if (!std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
    throw DomainError("anderson_alpha: particle numbers must be strictly ascending");
  }
  if (cutoff_factor < 1) throw DomainError("anderson_alpha: cutoff factor must be >= 1");

  AndersonFit out;
  std::vector<double> log_n;
  for (int n : ns) {
    const auto basis = delta_basis(kappa, n, cutoff_factor * default_impurity_cutoff(n), tol);
    out.ns.push_back(n);
    out.log_overlaps.push_back(static_log_overlap(basis, n));
    log_n.push_back(std::log(static_cast<double>(n)));
  }
  out.fit = linear_fit(log_n, out.log_overlaps);
  return out;
}

double many_body_variance(const ImpurityQuench& spec, const Tolerances& tol) {
  const int cutoff = spec.basis_cutoff > 0 ? spec.basis_cutoff : default_impurity_cutoff(spec.n_particles);
  const auto basis = delta_basis(spec.kappa, spec.n_particles, cutoff, tol);
  return slater_energy_spread(impurity_final_hamiltonian(basis), spec.n_particles);
}

}  // namespace ocqsl::fermi
