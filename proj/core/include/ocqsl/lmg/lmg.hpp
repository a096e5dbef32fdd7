#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocqsl/numerics/complex_matrix.hpp"
#include "ocqsl/numerics/linalg.hpp"
#include "ocqsl/numerics/tolerances.hpp"
#include "ocqsl/survival.hpp"

// Spin-1/2 impurity coupled to an isotropic LMG bath of N spins,
//
//   H = -(lambda/N)(S+S- + S-S+ - N) + b (-2 S_z)
//       - 2 (gamma/N)(s+S- + s-S+) + i (-2 s_z),
//
// with the bath restricted to the S = N/2 multiplet. The field signs b and i
// are fixed by `frozen_convention()`.
//
// Index layout: index = 2 q + s with q = m + N/2 in [0, N] and s = 0 (down),
// 1 (up). In this order the Hamiltonian is real and tridiagonal; the
// flip-flop term couples (q, down) with (q - 1, up).
namespace ocqsl::lmg {

inline constexpr int kMaxSpins = 20000;

/// Multipliers of the bath (-2 S_z) and impurity (-2 s_z) field terms.
struct SignConvention {
  int bath = 1;
  int impurity = 1;

  friend bool operator==(const SignConvention&, const SignConvention&) = default;
};

/// Convention selected by `calibrate_sign_convention`: bath field flipped,
/// impurity field unchanged. The bath then aligns with |-N/2> for lambda < 1
/// and the impurity starts in s_z = +1/2.
constexpr SignConvention frozen_convention() { return {-1, +1}; }

/// Tries the four sign choices and returns the unique one for which the
/// lambda < 1 bath ground level is |-N/2> and the brute-force variance of
/// the initial state reproduces the closed form for the computed j.
/// Throws Error if zero or several choices qualify.
SignConvention calibrate_sign_convention();

struct LMGSpec {
  double lambda = 0.0;
  int n_spins = 2;
  /// Impurity coupling; empty means lambda * sqrt(N).
  std::optional<double> gamma_override;
  std::vector<double> times{0.0};

  double gamma() const;
  /// Throws DomainError unless lambda >= 0, 2 <= N <= kMaxSpins and the
  /// grid is valid.
  void validate() const;
};

constexpr std::size_t dimension(int n_spins) { return 2 * (static_cast<std::size_t>(n_spins) + 1); }

/// Position of (bath m, impurity level) in the collective basis; q = m + N/2.
constexpr std::size_t state_index(int q, int up) { return 2 * static_cast<std::size_t>(q) + up; }

/// |S = N/2, m> (x) |s> amplitudes in the `state_index` layout.
struct CollectiveState {
  int n_spins = 2;
  std::vector<Complex> amplitudes;

  double norm() const;
  /// Product state with bath level q and impurity level `up`.
  static CollectiveState product(int n_spins, int q, int up);
};

struct LMGGroundInfo {
  /// Bath magnetic number of the gamma = 0 ground level.
  double m_ground = 0.0;
  /// Crossings passed relative to |-N/2>: j = m_ground + N/2.
  int j_crossings = 0;
  /// Bath energy of that level.
  double energy = 0.0;
};

/// Bath energy of |N/2, m>, q = m + N/2, under convention `sign`:
/// -(lambda/N)(2(S(S+1) - m^2) - N) - 2 b m.
double bath_energy(double lambda, int n_spins, int q, SignConvention sign = frozen_convention());

/// The 2(N+1)-dimensional Hamiltonian; interaction_on = false drops the
/// gamma term.
ComplexMatrix build_hamiltonian(const LMGSpec& spec, bool interaction_on,
                                SignConvention sign = frozen_convention());

/// Ground level of the gamma = 0 bath; ties go to the smaller j.
LMGGroundInfo ground_info(double lambda, int n_spins, SignConvention sign = frozen_convention());

/// Bath ground level (x) impurity ground level of the pre-quench Hamiltonian.
CollectiveState initial_state(const LMGSpec& spec, SignConvention sign = frozen_convention());

/// Max |H_ab| over pairs whose S_z + s_z eigenvalues differ.
double conserved_charge_defect(const ComplexMatrix& h, int n_spins);

/// <psi|H|psi> and <psi|H^2|psi> - <psi|H|psi>^2.
double expectation(const ComplexMatrix& h, const CollectiveState& psi);
double variance(const ComplexMatrix& h, const CollectiveState& psi);

/// exp(-i H t) psi given the eigendecomposition of H.
CollectiveState evolve(const EigenDecomposition& eig, const CollectiveState& psi, double t);

/// Spectral weights of the initial state in the post-quench eigenbasis.
QuenchSpectrum quench_spectrum(const LMGSpec& spec, const Tolerances& tol = {});

/// chi(t) on spec.times.
SurvivalSeries quench_chi(const LMGSpec& spec, const Tolerances& tol = {});

/// Closed form Delta H = sqrt(4 (1 + j)(N - j) gamma^2 / N^2).
double variance_closed_form(int j, int n_spins, double gamma);

struct VarianceCheck {
  int j = 0;
  double closed_form = 0.0;
  double brute_force = 0.0;
};

/// Closed form with j from `ground_info`, alongside the brute-force spread
/// of H_f on the initial state.
VarianceCheck variance_check(double lambda, int n_spins, double gamma);

struct FminResult {
  double f_min = 1.0;
  double t_min = 0.0;
  /// Grid spacing of the scan.
  double grid_step = 0.0;
  std::vector<std::string> warnings;
};

/// Default scan: 2048 points over 2 pi / Delta H (closed form).
std::vector<double> default_scan_grid(const LMGSpec& spec, std::size_t count = 2048);

/// Minimum of F over the grid (spec.times, or the default grid if it has
/// fewer than 3 points). Every local minimum is refined by a parabola through
/// it and its neighbours and re-evaluated exactly at the vertex. F recurs, so
/// the earliest dip within 1e-3 (relative) of the lowest one is returned.
FminResult fmin_scan(const LMGSpec& spec, const Tolerances& tol = {});

struct SpectrumSweep {
  int n_spins = 0;
  std::vector<double> lambdas;
  /// levels[i]: ascending bath spectrum at lambdas[i].
  std::vector<std::vector<double>> levels;
  /// Bath magnetic number of the ground level at lambdas[i].
  std::vector<double> ground_m;
  /// Exact ground-level crossing points N / (N - 2j - 1) inside the grid range.
  std::vector<double> crossings;
};

/// Crossing points lambda_j = N / (N - 2 j - 1) with lo < lambda_j <= hi.
std::vector<double> crossing_points(int n_spins, double lo, double hi);

SpectrumSweep spectrum_sweep(int n_spins, const std::vector<double>& lambda_grid);

}  // namespace ocqsl::lmg
