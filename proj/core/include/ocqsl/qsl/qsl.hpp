#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ocqsl/numerics/complex_matrix.hpp"
#include "ocqsl/numerics/tolerances.hpp"
#include "ocqsl/survival.hpp"

// Speed limits for the evolution of a pure state out of an eigenstate of
// H_i under H_f (hbar = 1).
namespace ocqsl::qsl {

/// arccos|chi| in [0, pi/2]. |chi| up to 1 + tol.chi_clamp is clamped to 1;
/// larger values throw InvalidOverlap.
double bures_angle(Complex chi, const Tolerances& tol = {});

/// Mandelstam-Tamm time arccos|chi| / delta_h. Throws DomainError for
/// delta_h <= 0.
double tau_qsl(Complex chi_at_tau, double delta_h, const Tolerances& tol = {});

/// Work bound (1 - |chi|) / |<W>|. Throws UndefinedBound when
/// |<W>| <= tol.zero_work.
double tau_work(Complex chi_at_tau, double mean_work, const Tolerances& tol = {});

/// Margolus-Levitin comparator (2/pi) arccos|chi| * pi / (2 E), with E the
/// mean energy above the post-quench ground state. Comparator only.
double tau_ml(Complex chi_at_tau, double mean_excitation, const Tolerances& tol = {});

/// First moment of the work distribution: sum_j p_j E_j - E_i.
double mean_work(const QuenchSpectrum& spectrum);

enum class VarianceSource { bruteforce, closed_form };

std::string to_string(VarianceSource source);

/// Inputs of one report. Optional fields are omitted from the report when
/// absent.
struct QSLInputs {
  double t_reference = 0.0;
  Complex chi = 1.0;
  double delta_h_bruteforce = 0.0;
  std::optional<double> delta_h_closed_form;
  double mean_work = 0.0;
  std::optional<double> mean_work_closed_form;
  std::optional<double> mean_excitation;
};

struct QSLReport {
  /// Time at which chi was taken.
  double t_reference = 0.0;
  double bures_angle = 0.0;
  double delta_h_bruteforce = 0.0;
  std::optional<double> delta_h_closed_form;
  double mean_work = 0.0;
  std::optional<double> mean_work_closed_form;
  /// tau_qsl uses `tau_qsl_source`; tau_qsl_closed_form always uses the closed form.
  double tau_qsl = 0.0;
  VarianceSource tau_qsl_source = VarianceSource::bruteforce;
  std::optional<double> tau_qsl_closed_form;
  /// Empty when |<W>| vanishes.
  std::optional<double> tau_w;
  std::optional<double> tau_ml;
};

QSLReport make_report(const QSLInputs& in, const Tolerances& tol = {});

/// Violations of t >= tau on a survival series.
struct BoundCheck {
  std::size_t samples = 0;
  std::size_t mt_violations = 0;
  /// max_t (cos(min(delta_h t, pi/2)) - |chi(t)|), the MT bound in amplitude
  /// form; negative when every sample is inside the bound.
  double mt_worst_excess = 0.0;
  /// False when the work bound is undefined (<W> = 0); the work fields are
  /// then meaningless.
  bool work_defined = false;
  std::size_t work_violations = 0;
  double work_worst_excess = 0.0;

  bool ok() const { return mt_violations == 0 && work_defined && work_violations == 0; }
};

BoundCheck check_bounds(const SurvivalSeries& series, double delta_h, double mean_work,
                        const Tolerances& tol = {});

/// Speed sqrt(I)/2 from the short-time decay ln|chi(t)| = -v^2 t^2 / 2 + O(t^4),
/// Richardson-extrapolated from steps h and 2h.
struct FisherVelocity {
  double velocity = 0.0;
  /// -2 ln|chi(h)| / h^2 and the same at 2h.
  double curvature_h = 0.0;
  double curvature_2h = 0.0;
};

/// `log_abs_chi(t)` must return ln|chi(t)|.
FisherVelocity fisher_velocity(const std::function<double(double)>& log_abs_chi, double h);

}  // namespace ocqsl::qsl
