#include <algorithm>
#include <cmath>
#include <string>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/numerics/linalg.hpp"

namespace ocqsl::fermi {

namespace {

void check_occupation(const SingleParticleBasis& basis, int n_particles) {
  if (n_particles < 1 || n_particles > basis.cutoff()) {
    throw DomainError("fermi: N = " + std::to_string(n_particles) + " outside basis of size " +
                      std::to_string(basis.cutoff()));
  }
  if (n_particles > basis.certified) {
    throw TruncationError("fermi: occupied orbital " + std::to_string(basis.certified) +
                              " is outside the certified part of the basis",
                          static_cast<std::size_t>(basis.certified), INFINITY);
  }
}

// Real coefficient rows k < N, skipping the structural zeros.
struct CompactRows {
  std::vector<double> values;  // n x m, row-major
  std::size_t n = 0, m = 0;
  bool real = true;
};

CompactRows compact_rows(const SingleParticleBasis& basis, int n_particles) {
  CompactRows rows;
  rows.n = static_cast<std::size_t>(n_particles);
  rows.m = static_cast<std::size_t>(basis.cutoff());
  rows.values.resize(rows.n * rows.m);
  for (std::size_t k = 0; k < rows.n; ++k) {
    for (std::size_t m = 0; m < rows.m; ++m) {
      const Complex c = basis.coeffs(k, m);
      if (c.imag() != 0.0) rows.real = false;
      rows.values[k * rows.m + m] = c.real();
    }
  }
  return rows;
}

ComplexMatrix overlap_matrix_impl(const SingleParticleBasis& basis, const CompactRows& rows,
                                  double t) {
  const std::size_t n = rows.n, m = rows.m;
  std::vector<double> cos_m(m), sin_m(m);
  for (std::size_t j = 0; j < m; ++j) {
    cos_m[j] = std::cos(basis.energies[j] * t);
    sin_m[j] = std::sin(basis.energies[j] * t);
  }
  ComplexMatrix a(n, n);
  if (rows.real) {
    std::vector<double> ck_cos(m), ck_sin(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double* ck = rows.values.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) {
        ck_cos[j] = ck[j] * cos_m[j];
        ck_sin[j] = ck[j] * sin_m[j];
      }
      const Complex row_phase = std::polar(1.0, reference_energy(static_cast<int>(k)) * t);
      // Parity: A_kl vanishes unless k and l share parity.
      for (std::size_t l = k % 2; l < n; l += 2) {
        const double* cl = rows.values.data() + l * m;
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          re += ck_cos[j] * cl[j];
          im -= ck_sin[j] * cl[j];
        }
        a(k, l) = row_phase * Complex(re, im);
      }
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex row_phase = std::polar(1.0, reference_energy(static_cast<int>(k)) * t);
      for (std::size_t l = 0; l < n; ++l) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          s += basis.coeffs(k, j) * std::conj(basis.coeffs(l, j)) * Complex(cos_m[j], -sin_m[j]);
        }
        a(k, l) = row_phase * s;
      }
    }
  }
  return a;
}

}  // namespace

ComplexMatrix overlap_matrix(const SingleParticleBasis& basis, int n_particles, double t) {
  check_occupation(basis, n_particles);
  if (!(t >= 0.0)) throw DomainError("overlap_matrix: t must be >= 0");
  return overlap_matrix_impl(basis, compact_rows(basis, n_particles), t);
}

SurvivalSeries survival_series_det(const SingleParticleBasis& basis, int n_particles,
                                   const std::vector<double>& times, const Tolerances& tol) {
  check_occupation(basis, n_particles);
  const auto rows = compact_rows(basis, n_particles);
  SurvivalSeries series;
  series.times.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw DomainError("survival_series_det: negative time");
    const auto det = log_determinant(overlap_matrix_impl(basis, rows, t));
    if (std::isnan(det.log_abs) || det.log_abs > std::log1p(tol.chi_bound)) {
      throw NonFiniteError("survival_series_det: |det A(" + std::to_string(t) +
                           ")| out of range (ln = " + std::to_string(det.log_abs) + ")");
    }
    series.push(t, det.log_abs, det.phase);
  }
  return series;
}

SurvivalSeries survival_series_det(const TrapQuench& spec, const Tolerances& tol) {
  spec.validate();
  const auto basis = trap_basis(spec.eta, spec.n_particles, spec.basis_cutoff, tol);
  return survival_series_det(basis, spec.n_particles, spec.times, tol);
}

SurvivalSeries survival_series_det(const ImpurityQuench& spec, const Tolerances& tol) {
  spec.validate();
  const int cutoff = spec.basis_cutoff > 0 ? spec.basis_cutoff : default_impurity_cutoff(spec.n_particles);
  const auto basis = delta_basis(spec.kappa, spec.n_particles, cutoff, tol);
  return survival_series_det(basis, spec.n_particles, spec.times, tol);
}

double slater_energy_spread(const ComplexMatrix& one_body, int n_particles) {
  if (!one_body.is_square()) throw DomainError("slater_energy_spread: matrix is not square");
  const auto n = static_cast<std::size_t>(n_particles);
  if (n_particles < 1 || n > one_body.rows()) throw DomainError("slater_energy_spread: bad N");
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = n; a < one_body.rows(); ++a) var += std::norm(one_body(a, i));
  }
  return std::sqrt(var);
}

double slater_mean_work(const ComplexMatrix& one_body, int n_particles) {
  const auto n = static_cast<std::size_t>(n_particles);
  if (n_particles < 1 || n > one_body.rows()) throw DomainError("slater_mean_work: bad N");
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w += one_body(i, i).real() - reference_energy(static_cast<int>(i));
  }
  return w;
}

double spectral_mean_work(const SingleParticleBasis& basis, int n_particles) {
  check_occupation(basis, n_particles);
  double w = 0.0;
  for (int k = 0; k < n_particles; ++k) {
    for (int m = 0; m < basis.cutoff(); ++m) {
      w += std::norm(basis.coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(m))) *
           (basis.energies[static_cast<std::size_t>(m)] - reference_energy(k));
    }
  }
  return w;
}

double mean_excitation_energy(const SingleParticleBasis& basis, int n_particles) {
  check_occupation(basis, n_particles);
  double e = 0.0;
  for (int k = 0; k < n_particles; ++k) {
    for (int m = 0; m < basis.cutoff(); ++m) {
      e += std::norm(basis.coeffs(static_cast<std::size_t>(k), static_cast<std::size_t>(m))) *
           basis.energies[static_cast<std::size_t>(m)];
    }
    e -= basis.energies[static_cast<std::size_t>(k)];
  }
  return e;
}

}  // namespace ocqsl::fermi
