#include "ocqsl/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/numerics/linalg.hpp"
#include "ocqsl/qsl/qsl.hpp"
#include "ocqsl/spectral/spectral.hpp"

namespace ocqsl::harness {

namespace {

class Suite {
 public:
  Suite(const Tolerances& tol, std::ostream* out) : tol_(tol), out_(out) {}

  const Tolerances& tol() const { return tol_; }

  void record(CheckResult c) {
    if (out_) *out_ << format_check(c) << '\n' << std::flush;
    report_.checks.push_back(std::move(c));
  }

  /// Passes when measured <= threshold; exceptions become failures.
  void check(const std::string& name, double threshold, const std::function<double()>& measure,
             const std::string& detail = {}) {
    CheckResult c{name, CheckStatus::pass, 0.0, threshold, detail};
    try {
      c.measured = measure();
      if (!(c.measured <= threshold)) c.status = CheckStatus::fail;
    } catch (const std::exception& e) {
      c.status = CheckStatus::fail;
      c.measured = NAN;
      c.detail = e.what();
    }
    record(std::move(c));
  }

  VerifyReport take() { return std::move(report_); }

 private:
  Tolerances tol_;
  std::ostream* out_;
  VerifyReport report_;
};

ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng, bool hermitian) {
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  if (!hermitian) return m;
  ComplexMatrix h = m + m.adjoint();
  return 0.5 * h;
}

Complex cofactor_det(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Complex det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j != c) minor(i - 1, jj++) = m(i, j);
      }
    }
    det += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor_det(minor);
  }
  return det;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string label(const char* fmt, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

}  // namespace

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                [](const auto& c) { return c.status == CheckStatus::fail; }));
}

std::string format_check(const CheckResult& c) {
  const char* status = c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "SKIP";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %-44s measured=%-12.4g threshold=%-10.3g", status, c.name.c_str(),
                c.measured, c.threshold);
  std::string line = buf;
  if (!c.detail.empty()) line += " " + c.detail;
  return line;
}

VerifyReport verify(bool quick, const Tolerances& tol_in, std::ostream* out) {
  Suite s(tol_in, out);
  const auto& tol = s.tol();
  std::mt19937_64 rng(20240611);

  // numerics -----------------------------------------------------------------
  s.check("numerics.determinant-vs-cofactor", tol.trace, [&] {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto m = random_matrix(n, rng, false);
      const Complex ref = cofactor_det(m);
      worst = std::max(worst, std::abs(determinant(m) - ref) / std::abs(ref));
    }
    return worst;
  });
  const auto h8 = random_matrix(8, rng, true);
  const auto eig8 = eigh(h8, tol);
  s.check("numerics.eigh-residual", tol.eigen_residual, [&] { return eigen_residual(h8, eig8); });
  s.check("numerics.eigh-orthonormality", tol.orthonormality,
          [&] { return orthonormality_defect(eig8.eigenvectors); });
  s.check("numerics.eigh-trace", tol.trace, [&] {
    double tr = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 8; ++i) tr += h8(i, i).real();
    for (double e : eig8.eigenvalues) sum += e;
    return std::abs(tr - sum) / h8.norm();
  });

  // fermi --------------------------------------------------------------------
  s.check("fermi.time-calibration", tol.analytic,
          [&] { return std::abs(fermi::calibrate_trap_time_scale(1.5) - fermi::trap_time_scale(1.5)); });
  const std::vector<int> small_ns = quick ? std::vector<int>{1, 4, 8} : std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8};
  for (double eta : {1.2, 1.5, 2.0}) {
    for (int n : small_ns) {
      s.check(label("fermi.closed-form-vs-det[eta=%g,N=%g]", eta, n), tol.analytic, [&] {
        const fermi::TrapQuench q{eta, n, 0, uniform_grid(std::numbers::pi / eta, quick ? 64 : 200)};
        const auto series = fermi::survival_series_det(q, tol);
        double worst = 0.0;
        for (std::size_t i = 0; i < series.size(); ++i) {
          worst = std::max(worst, std::abs(series.fidelity[i] -
                                           fermi::fidelity_dynamic_analytic(eta, n, series.times[i]).value));
        }
        return worst;
      });
    }
  }
  s.check("fermi.static-fidelity-det[eta=1.5,N=10]", tol.analytic, [&] {
    const auto basis = fermi::trap_basis(1.5, 10, 0, tol);
    const double det_log = 2.0 * fermi::static_log_overlap(basis, 10);
    return relative(det_log, fermi::fidelity_static_analytic(1.5, 10).log);
  });
  s.check("fermi.completeness[eta=1.5,N=20]", tol.completeness,
          [&] { return fermi::trap_basis(1.5, 20, 0, tol).completeness_defect; });
  s.check("fermi.unitary-overlap[eta=1,N=10]", tol.trace, [&] {
    const auto basis = fermi::trap_basis(1.0, 10, 0, tol);
    return std::abs(std::abs(determinant(fermi::overlap_matrix(basis, 10, 0.7))) - 1.0);
  });
  s.check("fermi.t-min-numeric-vs-arcsec", tol.analytic, [&] {
    double worst = 0.0;
    for (int n : {10, 20, 50}) {
      const auto tm = fermi::t_min(1.5, n, 1e-2);
      if (tm.exact_periods) worst = std::max(worst, std::abs(tm.numeric_periods - *tm.exact_periods));
    }
    return worst;
  });
  s.check("fermi.delta-cutoff-drift[kappa=0.5,N=20]", tol.delta_cutoff_drift,
          [&] { return fermi::delta_basis(0.5, 20, fermi::default_impurity_cutoff(20), tol).cutoff_drift; });

  const int trap_n = quick ? 10 : 20;
  const int imp_n = quick ? 20 : 40;
  const auto trap_basis = fermi::trap_basis(1.5, trap_n, 0, tol);
  const auto trap_series =
      fermi::survival_series_det(trap_basis, trap_n, uniform_grid(std::numbers::pi / 1.5, 128), tol);
  const double trap_dh = fermi::many_body_variance(fermi::TrapQuench{1.5, trap_n});
  const double trap_w = fermi::spectral_mean_work(trap_basis, trap_n);
  const auto imp_basis = fermi::delta_basis(0.5, imp_n, fermi::default_impurity_cutoff(imp_n), tol);
  const auto imp_series =
      fermi::survival_series_det(imp_basis, imp_n, uniform_grid(std::numbers::pi, 128), tol);
  const double imp_dh = fermi::slater_energy_spread(fermi::impurity_final_hamiltonian(imp_basis), imp_n);
  const double imp_w = fermi::spectral_mean_work(imp_basis, imp_n);

  s.check("fermi.chi-bound", tol.chi_bound, [&] {
    double worst = 0.0;
    for (const auto* series : {&trap_series, &imp_series}) {
      for (const auto& c : series->chi) worst = std::max(worst, std::abs(c) - 1.0);
    }
    return worst;
  });

  // lmg ----------------------------------------------------------------------
  s.check("lmg.sign-convention", 0.5, [&] {
    return lmg::calibrate_sign_convention() == lmg::frozen_convention() ? 0.0 : 1.0;
  });
  s.check("lmg.closed-form-vs-bruteforce", tol.closed_form, [&] {
    double worst = 0.0;
    for (int n : {10, 50, 200}) {
      for (double lambda : {0.5, 0.9, 1.2, 1.6, 2.0}) {
        const auto v = lmg::variance_check(lambda, n, lambda * std::sqrt(static_cast<double>(n)));
        worst = std::max(worst, relative(v.brute_force, v.closed_form));
      }
    }
    return worst;
  });
  const lmg::LMGSpec lmg_a{0.9, quick ? 50 : 200, std::nullopt, {0.0}};
  const lmg::LMGSpec lmg_b{1.1, quick ? 50 : 200, std::nullopt, {0.0}};
  s.check("lmg.conservation", tol.trace, [&] {
    return lmg::conserved_charge_defect(lmg::build_hamiltonian(lmg_b, true), lmg_b.n_spins);
  });
  const auto spec_a = lmg::quench_spectrum(lmg_a, tol);
  s.check("lmg.weights-sum", tol.trace, [&] {
    double sum = 0.0;
    for (double w : spec_a.weights) sum += w;
    return std::abs(sum - 1.0);
  });
  s.check("lmg.norm-preservation", tol.trace, [&] {
    const auto eig = eigh(lmg::build_hamiltonian(lmg_b, true), tol);
    const auto psi = lmg::initial_state(lmg_b);
    double worst = 0.0;
    for (double t : {0.3, 1.7, 12.5}) worst = std::max(worst, std::abs(lmg::evolve(eig, psi, t).norm() - 1.0));
    return worst;
  });
  s.check("lmg.mean-work-spectral-vs-expectation", tol.trace, [&] {
    const auto psi = lmg::initial_state(lmg_a);
    const double direct = lmg::expectation(lmg::build_hamiltonian(lmg_a, true), psi) -
                          lmg::expectation(lmg::build_hamiltonian(lmg_a, false), psi);
    return std::abs(qsl::mean_work(spec_a) - direct);
  });

  // qsl ----------------------------------------------------------------------
  std::vector<std::pair<std::string, lmg::LMGSpec>> lmg_runs{{"lambda=0.9", lmg_a}, {"lambda=1.1", lmg_b}};
  for (auto& [name, spec] : lmg_runs) spec.times = lmg::default_scan_grid(spec, quick ? 512 : 2048);

  s.check("qsl.mt-bound.trap", tol.bound_slack,
          [&] { return qsl::check_bounds(trap_series, trap_dh, trap_w, tol).mt_worst_excess; });
  s.check("qsl.mt-bound.impurity", tol.bound_slack,
          [&] { return qsl::check_bounds(imp_series, imp_dh, imp_w, tol).mt_worst_excess; });
  for (const auto& [name, spec] : lmg_runs) {
    s.check("qsl.mt-bound.lmg[" + name + "]", tol.bound_slack, [&] {
      const auto dh = lmg::variance_check(spec.lambda, spec.n_spins, spec.gamma()).brute_force;
      const auto series = lmg::quench_chi(spec, tol);
      return qsl::check_bounds(series, dh, 0.0, tol).mt_worst_excess;
    });
  }
  s.check("qsl.work-bound.trap", tol.bound_slack,
          [&] { return qsl::check_bounds(trap_series, trap_dh, trap_w, tol).work_worst_excess; });
  s.check("qsl.work-bound.impurity", tol.bound_slack,
          [&] { return qsl::check_bounds(imp_series, imp_dh, imp_w, tol).work_worst_excess; });
  for (const auto& [name, spec] : lmg_runs) {
    const double w = qsl::mean_work(lmg::quench_spectrum(spec, tol));
    if (std::abs(w) <= tol.zero_work) {
      s.record({"qsl.work-bound.lmg[" + name + "]", CheckStatus::skip, std::abs(w), tol.zero_work,
                "<W> vanishes (flip-flop coupling has zero diagonal): bound undefined"});
    } else {
      s.check("qsl.work-bound.lmg[" + name + "]", tol.bound_slack, [&] {
        return qsl::check_bounds(lmg::quench_chi(spec, tol), 1.0, w, tol).work_worst_excess;
      });
    }
  }

  s.check("qsl.fisher-velocity.trap", tol.fisher, [&] {
    const auto v = qsl::fisher_velocity(
        [&](double t) { return 0.5 * fermi::survival_series_det(trap_basis, trap_n, {0.0, t}, tol).log_fidelity[1]; },
        0.02 / trap_dh);
    return relative(v.velocity, trap_dh);
  });
  s.check("qsl.fisher-velocity.impurity", tol.fisher, [&] {
    const auto v = qsl::fisher_velocity(
        [&](double t) { return 0.5 * fermi::survival_series_det(imp_basis, imp_n, {0.0, t}, tol).log_fidelity[1]; },
        0.02 / imp_dh);
    return relative(v.velocity, imp_dh);
  });
  s.check("qsl.fisher-velocity.lmg", tol.fisher, [&] {
    const double dh = lmg::variance_check(lmg_b.lambda, lmg_b.n_spins, lmg_b.gamma()).brute_force;
    const auto spectrum = lmg::quench_spectrum(lmg_b, tol);
    const auto v = qsl::fisher_velocity([&](double t) { return std::log(std::abs(spectrum.chi(t))); }, 0.02 / dh);
    return relative(v.velocity, dh);
  });

  // spectral -----------------------------------------------------------------
  s.check("spectral.parseval", tol.parseval, [&] {
    const auto sf = spectral::spectral_function(imp_series, spectral::Window::none);
    double lhs = -std::norm(imp_series.chi[0]);
    for (const auto& c : imp_series.chi) lhs += 2.0 * std::norm(c);
    lhs *= sf.dt;
    const double d_omega = sf.omegas[1] - sf.omegas[0];
    double rhs = 0.0;
    for (double v : sf.values) rhs += v * v;
    rhs *= d_omega / (2.0 * std::numbers::pi);
    return relative(rhs, lhs);
  });

  return s.take();
}

}  // namespace ocqsl::harness
