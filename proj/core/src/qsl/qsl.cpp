#include "ocqsl/qsl/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ocqsl/error.hpp"

namespace ocqsl::qsl {

namespace {

double clamped_modulus(Complex chi, const Tolerances& tol) {
  const double r = std::abs(chi);
  if (!std::isfinite(r)) throw NonFiniteError("qsl: non-finite overlap");
  if (r > 1.0 + tol.chi_clamp) {
    throw InvalidOverlap("qsl: |chi| = " + std::to_string(r) + " exceeds 1");
  }
  return std::min(r, 1.0);
}

}  // namespace

double bures_angle(Complex chi, const Tolerances& tol) {
  return std::acos(clamped_modulus(chi, tol));
}

double tau_qsl(Complex chi_at_tau, double delta_h, const Tolerances& tol) {
  if (!(delta_h > 0.0)) throw DomainError("tau_qsl: delta_h must be > 0");
  return bures_angle(chi_at_tau, tol) / delta_h;
}

double tau_work(Complex chi_at_tau, double mean_work, const Tolerances& tol) {
  if (!std::isfinite(mean_work)) throw NonFiniteError("tau_work: non-finite mean work");
  if (std::abs(mean_work) <= tol.zero_work) {
    throw UndefinedBound("tau_work: mean work vanishes, bound undefined");
  }
  return (1.0 - clamped_modulus(chi_at_tau, tol)) / std::abs(mean_work);
}

double tau_ml(Complex chi_at_tau, double mean_excitation, const Tolerances& tol) {
  if (!(mean_excitation > 0.0)) {
    throw DomainError("tau_ml: mean excitation energy must be > 0");
  }
  return bures_angle(chi_at_tau, tol) / mean_excitation;
}

double mean_work(const QuenchSpectrum& spectrum) {
  if (spectrum.energies.size() != spectrum.weights.size()) {
    throw DomainError("mean_work: energies/weights length mismatch");
  }
  double w = 0.0;
  for (std::size_t j = 0; j < spectrum.energies.size(); ++j) {
    w += spectrum.weights[j] * (spectrum.energies[j] - spectrum.initial_energy);
  }
  return w;
}

std::string to_string(VarianceSource source) {
  return source == VarianceSource::closed_form ? "closed-form" : "bruteforce";
}

QSLReport make_report(const QSLInputs& in, const Tolerances& tol) {
  QSLReport r;
  r.t_reference = in.t_reference;
  r.bures_angle = bures_angle(in.chi, tol);
  r.delta_h_bruteforce = in.delta_h_bruteforce;
  r.delta_h_closed_form = in.delta_h_closed_form;
  r.mean_work = in.mean_work;
  r.mean_work_closed_form = in.mean_work_closed_form;
  r.tau_qsl = tau_qsl(in.chi, in.delta_h_bruteforce, tol);
  r.tau_qsl_source = VarianceSource::bruteforce;
  if (in.delta_h_closed_form && *in.delta_h_closed_form > 0.0) r.tau_qsl_closed_form = tau_qsl(in.chi, *in.delta_h_closed_form, tol);
  if (std::abs(in.mean_work) > tol.zero_work) r.tau_w = tau_work(in.chi, in.mean_work, tol);
  if (in.mean_excitation && *in.mean_excitation > 0.0) r.tau_ml = tau_ml(in.chi, *in.mean_excitation, tol);
  return r;
}

BoundCheck check_bounds(const SurvivalSeries& series, double delta_h, double mean_work,
                        const Tolerances& tol) {
  BoundCheck c;
  c.samples = series.size();
  c.mt_worst_excess = -std::numeric_limits<double>::infinity();
  c.work_defined = std::abs(mean_work) > tol.zero_work;
  c.work_worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.times[i];
    // t >= arccos|chi| / dH  <=>  |chi| >= cos(min(dH t, pi/2)); arccos would
    // turn a one-ulp error in |chi| ~ 1 into ~1e-8 in time.
    if (!(delta_h > 0.0)) throw DomainError("check_bounds: delta_h must be > 0");
    const double r = std::min(std::abs(series.chi[i]), 1.0 + tol.chi_clamp);
    const double mt = std::cos(std::min(delta_h * t, std::numbers::pi / 2)) - r;
    c.mt_worst_excess = std::max(c.mt_worst_excess, mt);
    if (mt > tol.bound_slack) ++c.mt_violations;
    if (c.work_defined) {
      const double w = tau_work(series.chi[i], mean_work, tol) - t;
      c.work_worst_excess = std::max(c.work_worst_excess, w);
      if (w > tol.bound_slack) ++c.work_violations;
    }
  }
  return c;
}

FisherVelocity fisher_velocity(const std::function<double(double)>& log_abs_chi, double h) {
  if (!(h > 0.0)) throw DomainError("fisher_velocity: step must be > 0");
  FisherVelocity f;
  f.curvature_h = -2.0 * log_abs_chi(h) / (h * h);
  f.curvature_2h = -2.0 * log_abs_chi(2.0 * h) / (4.0 * h * h);
  const double extrapolated = (4.0 * f.curvature_h - f.curvature_2h) / 3.0;
  if (!std::isfinite(extrapolated)) throw NonFiniteError("fisher_velocity: non-finite curvature");
  f.velocity = std::sqrt(std::max(0.0, extrapolated));
  return f;
}

}  // namespace ocqsl::qsl
