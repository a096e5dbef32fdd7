#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocqsl/numerics/complex_matrix.hpp"
#include "ocqsl/numerics/fit.hpp"
#include "ocqsl/numerics/tolerances.hpp"
#include "ocqsl/survival.hpp"

// Non-interacting fermions in a unit-frequency harmonic trap (omega_1 = 1,
// m = hbar = 1). The N-particle initial state fills the lowest N oscillator
// orbitals psi_k with energies E_k = k + 1/2; a sudden quench switches the
// one-body Hamiltonian to either a trap of frequency eta or the same trap plus
// a delta barrier of height N * kappa at the origin.
namespace ocqsl::fermi {

/// Sudden change of the trap frequency 1 -> eta.
struct TrapQuench {
  double eta = 1.0;
  int n_particles = 1;
  /// Single-particle cutoff M; 0 selects the default and grows it until the
  /// occupied orbitals pass the completeness check.
  int basis_cutoff = 0;
  std::vector<double> times{0.0};

  void validate() const;
};

/// Sudden switch-on of N * kappa * delta(x).
struct ImpurityQuench {
  double kappa = 0.0;
  int n_particles = 1;
  /// 0 selects max(4N, 64).
  int basis_cutoff = 0;
  std::vector<double> times{0.0};

  void validate() const;
};

/// Eigenpairs of the post-quench one-body Hamiltonian, expanded in the
/// unperturbed oscillator orbitals.
struct SingleParticleBasis {
  /// E'_m, ascending.
  std::vector<double> energies;
  /// Parity of phi_m (0 even, 1 odd).
  std::vector<int> parity;
  /// (k, m) = <psi_k | phi_m>; exactly zero when k and m have opposite parity.
  ComplexMatrix coeffs;
  /// Rows k < certified and columns m < certified passed the completeness check.
  int certified = 0;
  /// Largest completeness defect seen among certified rows/columns.
  double completeness_defect = 0.0;
  /// Effective delta coupling used in the truncated even sector (impurity only).
  double coupling = 0.0;
  /// Max shift of the lowest levels under cutoff doubling (impurity only).
  double cutoff_drift = 0.0;
  std::vector<std::string> warnings;

  int cutoff() const noexcept { return static_cast<int>(energies.size()); }
};

/// E_k of the unperturbed unit-frequency orbital.
constexpr double reference_energy(int k) { return k + 0.5; }

// ---------------------------------------------------------------------------
// Trap quench

/// Factor c in tau = c * t that maps internal time onto the argument of the
/// closed-form trap-quench fidelity.
///
/// Determined by comparing the N = 1 determinant series to the closed form
/// for both candidates (1 and eta); throws if neither agrees to 1e-6.
double calibrate_trap_time_scale(double eta);

/// Frozen result of `calibrate_trap_time_scale`: the closed-form argument is
/// the phase eta * t accumulated by the post-quench oscillator.
constexpr double trap_time_scale(double eta) { return eta; }

/// Overlaps <psi_k | phi_m> between unit-frequency and frequency-eta
/// oscillator eigenstates, k, m < cutoff, by Gauss-Hermite quadrature.
/// Energies E'_m = eta (m + 1/2). `certified` < 0 means cutoff / 2.
/// Throws TruncationError naming the first row/column whose completeness
/// defect exceeds `tol.completeness`.
SingleParticleBasis trap_overlap_coeffs(double eta, int cutoff, int certified = -1,
                                        const Tolerances& tol = {});

/// Basis for an N-particle trap quench: `cutoff` if positive, otherwise
/// max(2N, 32) doubled until the N occupied orbitals are complete.
SingleParticleBasis trap_basis(double eta, int n_particles, int cutoff = 0,
                               const Tolerances& tol = {});

/// A value with its natural log, for quantities that underflow.
struct LogValue {
  double value = 0.0;
  double log = 0.0;
};

/// Ground-state fidelity (2 sqrt(eta) / (1 + eta))^(N^2).
LogValue fidelity_static_analytic(double eta, int n_particles);

/// Closed-form survival probability of the trap quench at internal time t:
/// (2 eta / sqrt(4 eta^2 cos^2 tau + (eta^2 + 1)^2 sin^2 tau))^(N^2),
/// tau = trap_time_scale(eta) * t.
LogValue fidelity_dynamic_analytic(double eta, int n_particles, double t);

/// Closed form of the trap energy spread (a per-particle average):
/// exact = (eta^2 - 1) / (2 sqrt 2 N) * sum_{n=1}^N sqrt(n^2 - n + 1),
/// large_n = N (eta^2 - 1) / (4 sqrt 2).
struct ClosedFormDeltaH {
  double exact = 0.0;
  double large_n = 0.0;
};
ClosedFormDeltaH delta_h_closed_form(double eta, int n_particles);

/// Closed-form average work N (eta^2 - 1) / 4; the spectral first moment is N times this.
double mean_work_closed_form(double eta, int n_particles);

/// Minimum time for the trap survival probability to fall to theta.
///
/// All values refer to the same instant. `internal` is in units of
/// 1/omega_1, `phase` = eta * t is the closed-form argument, and the
/// `*_periods` fields are phase / pi, the unit in which the arcsec and
/// large-N closed forms are written.
struct TminResult {
  double internal = 0.0;
  double phase = 0.0;
  double numeric_periods = 0.0;
  /// arcsec closed form; empty where its argument is not real.
  std::optional<double> exact_periods;
  /// Large-N closed form (2 eta / (pi N)) sqrt(ln theta^-2) / (eta^2 - 1).
  double large_n_periods = 0.0;
};

/// Throws BelowDynamicalFloor when theta is below min_t F(t).
TminResult t_min(double eta, int n_particles, double theta);

/// The large-N closed form alone; defined for every theta in (0, 1].
double t_min_large_n_periods(double eta, int n_particles, double theta);

/// Post-quench one-body Hamiltonian 1/2 p^2 + 1/2 eta^2 x^2 in the first
/// `size` unit-frequency orbitals (exact matrix elements).
ComplexMatrix trap_final_hamiltonian(double eta, int size);

// ---------------------------------------------------------------------------
// Delta impurity

/// Even-sector Green's function at the origin of the unit oscillator,
/// sum_{k even} psi_k(0)^2 / (E - E_k) = -Gamma(1/4 - E/2) / (2 Gamma(3/4 - E/2)).
/// Valid for E > -1/2 away from the poles E = 2j + 1/2.
double zero_range_green(double energy);

/// Exact even-parity levels of 1/2 p^2 + 1/2 x^2 + g delta(x) below `count`,
/// from the root of 1/g = zero_range_green(E) in each (2j + 1/2, 2j + 5/2).
std::vector<double> zero_range_even_levels(double g, int count);

/// Eigenpairs of -1/2 d^2/dx^2 + 1/2 x^2 + N kappa delta(x) in the first
/// `cutoff` oscillator orbitals.
///
/// The odd sector is untouched (E = n + 1/2, identity coefficients). The
/// even sector is diagonalized with the coupling renormalized for the
/// truncation, 1/g_M = 1/g - [G(E_F) - G_M(E_F)] at E_F = N, so the
/// truncated model reproduces the zero-range limit near the Fermi level.
/// Drift of the lowest N levels under cutoff doubling is recorded and
/// checked against `tol.delta_cutoff_drift` (ConvergenceError).
SingleParticleBasis delta_basis(double kappa, int n_particles, int cutoff,
                                const Tolerances& tol = {});

constexpr int default_impurity_cutoff(int n_particles) {
  return 4 * n_particles > 64 ? 4 * n_particles : 64;
}

/// The truncated post-quench Hamiltonian that `basis` diagonalizes.
ComplexMatrix impurity_final_hamiltonian(const SingleParticleBasis& basis);

/// Static overlap ln|<Psi|Phi>| between the unperturbed and perturbed
/// N-particle ground states.
double static_log_overlap(const SingleParticleBasis& basis, int n_particles);

struct AndersonFit {
  std::vector<int> ns;
  std::vector<double> log_overlaps;
  /// ln|chi| against ln N; slope = -alpha / 2.
  LinearFit fit;

  double alpha() const { return -2.0 * fit.slope; }
};

/// Static overlap exponent for the delta impurity; cutoffs are
/// cutoff_factor * default_impurity_cutoff(N).
AndersonFit anderson_alpha(double kappa, std::span<const int> ns, int cutoff_factor = 1,
                           const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Slater determinants

/// A_{kl}(t) = sum_m <psi_k|phi_m> <psi_l|phi_m>^* exp(-i (E'_m - E_k) t),
/// k, l < N.
ComplexMatrix overlap_matrix(const SingleParticleBasis& basis, int n_particles, double t);

/// chi(t) = det A(t) on `times`.
SurvivalSeries survival_series_det(const SingleParticleBasis& basis, int n_particles,
                                   const std::vector<double>& times,
                                   const Tolerances& tol = {});
SurvivalSeries survival_series_det(const TrapQuench& spec, const Tolerances& tol = {});
SurvivalSeries survival_series_det(const ImpurityQuench& spec, const Tolerances& tol = {});

/// Energy spread of the Slater determinant of the lowest N orbitals under a
/// one-body Hamiltonian given in the orbital basis:
/// Delta H^2 = sum_{i < N <= a} |h_{ai}|^2.
double slater_energy_spread(const ComplexMatrix& one_body, int n_particles);

/// <Psi| H_f - H_i |Psi> from diagonal matrix elements.
double slater_mean_work(const ComplexMatrix& one_body, int n_particles);

/// sum_{k<N} sum_m |<psi_k|phi_m>|^2 (E'_m - E_k): the first moment of the
/// work distribution from the single-particle spectral weights.
double spectral_mean_work(const SingleParticleBasis& basis, int n_particles);

/// <Psi|H_f|Psi> - E_0^f, the mean energy above the post-quench ground state.
double mean_excitation_energy(const SingleParticleBasis& basis, int n_particles);

/// Brute-force Delta H_f of the many-body initial state.
double many_body_variance(const TrapQuench& spec);
double many_body_variance(const ImpurityQuench& spec, const Tolerances& tol = {});

}  // namespace ocqsl::fermi
