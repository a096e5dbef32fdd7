#pragma once

#include <array>
#include <string_view>

namespace ocqsl {

/// Every numerical tolerance used by the library, in one place.
///
/// Operations take a `const Tolerances&` defaulting to `Tolerances{}`; the
/// harness lets a run config override individual fields.
struct Tolerances {
  /// Max entrywise |m - m^dagger| accepted by eigh.
  double hermiticity = 1e-10;
  /// Eigenvector columns orthonormal to this.
  double orthonormality = 1e-10;
  /// ||H v - E v|| per eigenpair, relative to ||H||.
  double eigen_residual = 1e-9;
  /// Completeness defect of a truncated single-particle basis.
  double completeness = 1e-8;
  /// Overlaps with |chi| <= 1 + chi_clamp are clamped to 1; larger is an error.
  double chi_clamp = 1e-6;
  /// |chi(t)| <= 1 + chi_bound on every survival series.
  double chi_bound = 1e-10;
  /// Max shift of the lowest N delta-impurity levels when the cutoff doubles.
  double delta_cutoff_drift = 1e-2;
  /// Slack allowed when checking speed-limit bounds t >= tau.
  double bound_slack = 1e-9;
  /// Trace identity and unitarity checks.
  double trace = 1e-10;
  /// |<W>| at or below this leaves the work bound undefined.
  double zero_work = 1e-10;
  /// Closed-form fidelities and t_min against their numerical counterparts.
  double analytic = 1e-6;
  /// Closed-form against brute-force LMG variance.
  double closed_form = 1e-8;
  /// Relative mismatch of the short-time Fisher velocity and Delta H.
  double fisher = 1e-3;
  /// Discrete Parseval identity of the spectral transform.
  double parseval = 1e-8;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct ToleranceField {
  std::string_view name;
  double Tolerances::*member;
};

/// Field names as used in run configs and on the command line.
inline constexpr std::array<ToleranceField, 14> kToleranceFields{{
    {"hermiticity", &Tolerances::hermiticity},
    {"orthonormality", &Tolerances::orthonormality},
    {"eigen-residual", &Tolerances::eigen_residual},
    {"completeness", &Tolerances::completeness},
    {"chi-clamp", &Tolerances::chi_clamp},
    {"chi-bound", &Tolerances::chi_bound},
    {"delta-cutoff-drift", &Tolerances::delta_cutoff_drift},
    {"bound-slack", &Tolerances::bound_slack},
    {"trace", &Tolerances::trace},
    {"zero-work", &Tolerances::zero_work},
    {"analytic", &Tolerances::analytic},
    {"closed-form", &Tolerances::closed_form},
    {"fisher", &Tolerances::fisher},
    {"parseval", &Tolerances::parseval},
}};

}  // namespace ocqsl
