#include "ocqsl/harness/points.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/qsl/qsl.hpp"

namespace ocqsl::harness {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

template <typename T>
std::vector<T> ascending(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

json report_json(const qsl::QSLReport& r, const std::string& note = {}) {
  json j{{"t_reference", number(r.t_reference)},
         {"bures_angle", number(r.bures_angle)},
         {"delta_h_bruteforce", number(r.delta_h_bruteforce)},
         {"delta_h_closed_form", number(r.delta_h_closed_form)},
         {"mean_work", number(r.mean_work)},
         {"mean_work_closed_form", number(r.mean_work_closed_form)},
         {"tau_qsl", number(r.tau_qsl)},
         {"tau_qsl_source", qsl::to_string(r.tau_qsl_source)},
         {"tau_qsl_closed_form", number(r.tau_qsl_closed_form)},
         {"tau_w", number(r.tau_w)},
         {"tau_ml", number(r.tau_ml)}};
  if (!note.empty()) j["note"] = note;
  return j;
}

double opt(const std::optional<double>& v) { return v ? *v : kNaN; }

// ---------------------------------------------------------------------------
// Fermi quenches

struct FermiRun {
  std::string label;
  fermi::SingleParticleBasis basis;
  int n = 0;
  double delta_h = 0.0;
  std::optional<double> delta_h_closed_form;
  std::optional<double> delta_h_closed_form_large_n;
  std::optional<double> mean_work_closed_form;
  SurvivalSeries series;
};

struct FermiSummary {
  double t_min = kNaN;
  double t_min_periods = kNaN;
  double t_min_large_n_periods = kNaN;
  double t_min_exact_periods = kNaN;
  double mean_work = 0.0;
  double mean_excitation = 0.0;
  double min_fidelity = 1.0;
  qsl::BoundCheck bounds;
  std::optional<qsl::QSLReport> report;
  std::string note;
};

std::vector<double> fermi_grid(const RunConfig& c, double default_extent) {
  return uniform_grid(c.time.extent > 0.0 ? c.time.extent : default_extent, c.time.points);
}

FermiRun trap_run(const RunConfig& c, double eta, int n) {
  FermiRun r;
  r.label = "trap";
  r.n = n;
  r.basis = fermi::trap_basis(eta, n, 0, c.tolerances);
  r.delta_h = fermi::many_body_variance(fermi::TrapQuench{eta, n});
  const auto closed = fermi::delta_h_closed_form(eta, n);
  r.delta_h_closed_form = closed.exact;
  r.delta_h_closed_form_large_n = closed.large_n;
  r.mean_work_closed_form = fermi::mean_work_closed_form(eta, n);
  r.series = fermi::survival_series_det(r.basis, n, fermi_grid(c, std::numbers::pi / eta), c.tolerances);
  return r;
}

FermiRun impurity_run(const RunConfig& c, double kappa, int n) {
  FermiRun r;
  r.label = "impurity";
  r.n = n;
  r.basis = fermi::delta_basis(kappa, n, fermi::default_impurity_cutoff(n), c.tolerances);
  r.delta_h = fermi::slater_energy_spread(fermi::impurity_final_hamiltonian(r.basis), n);
  r.series = fermi::survival_series_det(r.basis, n, fermi_grid(c, std::numbers::pi), c.tolerances);
  return r;
}

// First time F(t) = theta: scan the series, then bisect on the bracketing
// interval with single-time determinants.
double first_crossing(const FermiRun& r, double theta, const Tolerances& tol) {
  const auto& f = r.series.fidelity;
  std::size_t i = 0;
  while (i < f.size() && f[i] > theta) ++i;
  if (i == f.size()) return kNaN;
  if (i == 0) return 0.0;
  double lo = r.series.times[i - 1], hi = r.series.times[i];
  for (int it = 0; it < 60 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto s = fermi::survival_series_det(r.basis, r.n, {0.0, mid}, tol);
    (s.fidelity[1] > theta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FermiSummary summarize(const RunConfig& c, const FermiRun& r, double theta, std::optional<double> eta) {
  const auto& tol = c.tolerances;
  FermiSummary s;
  s.mean_work = fermi::spectral_mean_work(r.basis, r.n);
  s.mean_excitation = fermi::mean_excitation_energy(r.basis, r.n);
  s.min_fidelity = *std::min_element(r.series.fidelity.begin(), r.series.fidelity.end());
  s.bounds = qsl::check_bounds(r.series, r.delta_h, s.mean_work, tol);

  if (eta) {
    try {
      const auto tm = fermi::t_min(*eta, r.n, theta);
      s.t_min = tm.internal;
      s.t_min_periods = tm.numeric_periods;
      s.t_min_large_n_periods = tm.large_n_periods;
      s.t_min_exact_periods = opt(tm.exact_periods);
    } catch (const BelowDynamicalFloor& e) {
      s.note = e.what();
      s.t_min_large_n_periods = fermi::t_min_large_n_periods(*eta, r.n, theta);
    }
  } else {
    s.t_min = first_crossing(r, theta, tol);
    if (std::isnan(s.t_min)) {
      s.note = "theta = " + std::to_string(theta) + " not reached on the grid (min F = " +
               std::to_string(s.min_fidelity) + ")";
    }
  }
  if (!std::isnan(s.t_min)) {
    qsl::QSLInputs in;
    in.t_reference = s.t_min;
    in.chi = std::sqrt(theta);
    in.delta_h_bruteforce = r.delta_h;
    in.delta_h_closed_form = r.delta_h_closed_form;
    in.mean_work = s.mean_work;
    in.mean_work_closed_form = r.mean_work_closed_form;
    if (s.mean_excitation > 0.0) in.mean_excitation = s.mean_excitation;
    s.report = qsl::make_report(in, tol);
  }
  return s;
}

json fermi_report(const Point& p, const FermiRun& r, const FermiSummary& s) {
  json j{{"model", r.label}, {"point", p.key()}};
  if (s.report) j["qsl"] = report_json(*s.report);
  if (!s.note.empty()) j["note"] = s.note;
  j["mt_violations"] = s.bounds.mt_violations;
  j["work_violations"] = s.bounds.work_violations;
  j["completeness_defect"] = number(r.basis.completeness_defect);
  if (r.basis.cutoff_drift > 0.0) j["cutoff_drift"] = r.basis.cutoff_drift;
  if (!r.basis.warnings.empty()) j["warnings"] = r.basis.warnings;
  return j;
}

std::vector<std::vector<double>> series_rows(const std::vector<double>& key, const SurvivalSeries& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto row = key;
    row.insert(row.end(), {s.times[i], s.chi[i].real(), s.chi[i].imag(), s.fidelity[i]});
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string> kFermiQslColumns{
    "t_min",         "t_min_periods",   "t_min_large_n_periods", "delta_h_bruteforce",
    "delta_h_closed_form", "delta_h_closed_form_large_n", "mean_work",       "mean_work_closed_form",
    "mean_excitation", "tau_qsl",       "tau_qsl_closed_form",         "tau_w",
    "tau_ml",        "min_fidelity",    "mt_violations",         "work_violations"};

std::vector<double> fermi_qsl_values(const FermiRun& r, const FermiSummary& s) {
  const auto& rep = s.report;
  return {s.t_min,
          s.t_min_periods,
          s.t_min_large_n_periods,
          r.delta_h,
          opt(r.delta_h_closed_form),
          opt(r.delta_h_closed_form_large_n),
          s.mean_work,
          opt(r.mean_work_closed_form),
          s.mean_excitation,
          rep ? rep->tau_qsl : kNaN,
          rep ? opt(rep->tau_qsl_closed_form) : kNaN,
          rep ? opt(rep->tau_w) : kNaN,
          rep ? opt(rep->tau_ml) : kNaN,
          s.min_fidelity,
          static_cast<double>(s.bounds.mt_violations),
          static_cast<double>(s.bounds.work_violations)};
}

template <typename T>
std::vector<T> with_prefix(std::vector<T> head, const std::vector<T>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

// ---------------------------------------------------------------------------
// LMG

lmg::LMGSpec lmg_spec(const RunConfig& c, double lambda, int n) {
  lmg::LMGSpec spec{lambda, n, std::nullopt, {0.0}};
  if (c.time.extent > 0.0) {
    spec.times = uniform_grid(c.time.extent, c.time.points);
  } else {
    spec.times = lmg::default_scan_grid(spec, c.time.points);
  }
  return spec;
}

const std::vector<std::string> kLmgQslColumns{
    "lambda",    "n",          "gamma",   "j",       "f_min",         "t_min",
    "delta_h_closed_form", "delta_h_bruteforce", "mean_work", "mean_excitation",
    "tau_qsl",   "tau_ml",     "mt_violations", "work_bound_defined"};

PointResult lmg_qsl_point(const RunConfig& c, const Point& p, const std::string& family) {
  const double lambda = p.get("lambda");
  const int n = static_cast<int>(p.get("n"));
  const auto spec = lmg_spec(c, lambda, n);
  const auto& tol = c.tolerances;
  const auto spectrum = lmg::quench_spectrum(spec, tol);
  const auto series = spectrum.evaluate(spec.times);
  const auto fmin = lmg::fmin_scan(spec, tol);
  const auto var = lmg::variance_check(lambda, n, spec.gamma());
  const double work = qsl::mean_work(spectrum);
  double excitation = -spectrum.energies.front();
  for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
    excitation += spectrum.weights[k] * spectrum.energies[k];
  }
  qsl::BoundCheck bounds;
  if (var.brute_force > 0.0) {
    bounds = qsl::check_bounds(series, var.brute_force, work, tol);
  } else {
    bounds.samples = series.size();
    bounds.work_defined = std::abs(work) > tol.zero_work;
  }

  qsl::QSLInputs in;
  in.t_reference = fmin.t_min;
  in.chi = spectrum.chi(fmin.t_min);
  in.delta_h_bruteforce = var.brute_force;
  in.delta_h_closed_form = var.closed_form;
  in.mean_work = work;
  if (excitation > 0.0) in.mean_excitation = excitation;

  PointResult out;
  json j{{"model", "lmg"}, {"point", p.key()}, {"j", var.j}};
  double tau = kNaN, tau_ml = kNaN;
  if (var.brute_force > 0.0) {
    const auto rep = qsl::make_report(in, tol);
    tau = rep.tau_qsl;
    tau_ml = opt(rep.tau_ml);
    j["qsl"] = report_json(rep, bounds.work_defined ? "" : "mean work vanishes: work bound undefined");
  }
  if (!fmin.warnings.empty()) j["warnings"] = fmin.warnings;
  out.report = j;
  out.rows[family].push_back({lambda, static_cast<double>(n), spec.gamma(), static_cast<double>(var.j),
                              fmin.f_min, fmin.t_min, var.closed_form, var.brute_force, work, excitation,
                              tau, tau_ml, static_cast<double>(bounds.mt_violations),
                              bounds.work_defined ? 1.0 : 0.0});
  return out;
}

}  // namespace

double Point::get(const std::string& name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  throw Error("point: no parameter '" + name + "'");
}

std::string Point::key() const {
  std::string out;
  for (const auto& [k, v] : params) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!out.empty()) out += '_';
    out += k + "=" + buf;
  }
  return out;
}

json to_json(const PointResult& r) {
  json rows = json::object();
  for (const auto& [family, table] : r.rows) {
    json t = json::array();
    for (const auto& row : table) {
      json jr = json::array();
      for (double v : row) jr.push_back(std::isnan(v) ? json(nullptr) : json(v));
      t.push_back(jr);
    }
    rows[family] = t;
  }
  return json{{"rows", rows}, {"report", r.report}};
}

PointResult point_result_from_json(const json& j) {
  PointResult r;
  for (const auto& [family, table] : j.at("rows").items()) {
    auto& out = r.rows[family];
    for (const auto& jr : table) {
      std::vector<double> row;
      for (const auto& v : jr) row.push_back(v.is_null() ? kNaN : v.get<double>());
      out.push_back(std::move(row));
    }
  }
  r.report = j.at("report");
  return r;
}

std::vector<Family> families(const RunConfig& c) {
  const std::vector<std::string> series_tail{"t", "chi_re", "chi_im", "fidelity"};
  switch (c.task) {
    case Task::qsl:
      switch (c.model) {
        case Model::fermi_trap:
          return {{"trap_qsl", with_prefix<std::string>({"eta", "n", "theta"}, kFermiQslColumns)},
                  {"trap_series", with_prefix<std::string>({"eta", "n"}, series_tail)}};
        case Model::fermi_impurity:
          return {{"impurity_qsl", with_prefix<std::string>({"kappa", "n", "theta", "static_log_overlap"}, kFermiQslColumns)},
                  {"impurity_series", with_prefix<std::string>({"kappa", "n"}, series_tail)}};
        case Model::lmg:
          return {{"lmg_qsl", kLmgQslColumns}};
      }
      break;
    case Task::fig1a:
      return {{"fig1a", {"n", "tau_qsl_trap", "tau_qsl_impurity", "tau_qsl_trap_closed_form",
                         "tau_qsl_trap_closed_form_large_n", "delta_h_trap", "delta_h_trap_closed_form",
                         "delta_h_impurity"}}};
    case Task::fig1b:
      return {{"fig1b", {"n", "t_min_trap", "t_min_impurity", "t_min_trap_periods",
                         "t_min_trap_large_n_periods", "t_min_trap_exact_periods"}}};
    case Task::fig2:
      return {{"fig2", {"lambda", "n", "j", "f_min", "t_min"}},
              {"fig2_series", with_prefix<std::string>({"lambda", "n"}, series_tail)}};
    case Task::fig3:
      return {{"fig3", {"lambda", "n", "inverse_n", "f_min", "t_min"}}};
    case Task::spectrum:
      return {{"spectrum", {"n", "lambda", "level", "energy"}},
              {"ground", {"n", "lambda", "m_ground", "j"}},
              {"crossings", {"n", "j", "lambda_c"}}};
    case Task::supp_c:
      return {{"supp_c", {"eta", "n", "theta", "t_reference", "tau_mt", "tau_ml", "tau_w", "tau_mt_closed_form"}}};
  }
  throw ConfigError("unknown task");
}

std::vector<Point> enumerate_points(const RunConfig& c) {
  std::vector<Point> points;
  const auto ns = ascending(c.n);
  auto per_n = [&](auto&& add) {
    for (int n : ns) add(static_cast<double>(n));
  };
  switch (c.task) {
    case Task::qsl:
      if (c.model == Model::lmg) {
        for (double l : ascending(c.lambda)) per_n([&](double n) { points.push_back({{{"lambda", l}, {"n", n}}}); });
      } else {
        const bool trap = c.model == Model::fermi_trap;
        for (double x : ascending(trap ? c.eta : c.kappa)) {
          per_n([&](double n) {
            for (double th : ascending(c.thresholds)) {
              points.push_back({{{trap ? "eta" : "kappa", x}, {"n", n}, {"theta", th}}});
            }
          });
        }
      }
      break;
    case Task::fig1a:
    case Task::fig1b:
    case Task::spectrum:
      per_n([&](double n) { points.push_back({{{"n", n}}}); });
      break;
    case Task::fig2:
    case Task::fig3:
      for (double l : ascending(c.lambda)) per_n([&](double n) { points.push_back({{{"lambda", l}, {"n", n}}}); });
      break;
    case Task::supp_c:
      for (double e : ascending(c.eta)) per_n([&](double n) { points.push_back({{{"eta", e}, {"n", n}}}); });
      break;
  }
  return points;
}

PointResult compute_point(const RunConfig& c, const Point& p) {
  PointResult out;
  switch (c.task) {
    case Task::qsl: {
      if (c.model == Model::lmg) return lmg_qsl_point(c, p, "lmg_qsl");
      const int n = static_cast<int>(p.get("n"));
      const double theta = p.get("theta");
      if (c.model == Model::fermi_trap) {
        const double eta = p.get("eta");
        const auto run = trap_run(c, eta, n);
        const auto s = summarize(c, run, theta, eta);
        out.rows["trap_qsl"].push_back(with_prefix<double>({eta, static_cast<double>(n), theta}, fermi_qsl_values(run, s)));
        out.rows["trap_series"] = series_rows({eta, static_cast<double>(n)}, run.series);
        out.report = fermi_report(p, run, s);
      } else {
        const double kappa = p.get("kappa");
        const auto run = impurity_run(c, kappa, n);
        const auto s = summarize(c, run, theta, std::nullopt);
        const double log_overlap = fermi::static_log_overlap(run.basis, n);
        out.rows["impurity_qsl"].push_back(
            with_prefix<double>({kappa, static_cast<double>(n), theta, log_overlap}, fermi_qsl_values(run, s)));
        out.rows["impurity_series"] = series_rows({kappa, static_cast<double>(n)}, run.series);
        out.report = fermi_report(p, run, s);
      }
      return out;
    }
    case Task::fig1a:
    case Task::fig1b: {
      const int n = static_cast<int>(p.get("n"));
      const double eta = c.eta.front(), kappa = c.kappa.front();
      const auto trap = trap_run(c, eta, n);
      const auto st = summarize(c, trap, c.thresholds[0], eta);
      const auto imp = impurity_run(c, kappa, n);
      const auto si = summarize(c, imp, c.thresholds[1], std::nullopt);
      const double dn = n;
      if (c.task == Task::fig1a) {
        const double angle = std::acos(std::sqrt(c.thresholds[0]));
        out.rows["fig1a"].push_back({dn, st.report ? st.report->tau_qsl : kNaN,
                                     si.report ? si.report->tau_qsl : kNaN,
                                     st.report ? opt(st.report->tau_qsl_closed_form) : kNaN,
                                     angle / *trap.delta_h_closed_form_large_n, trap.delta_h, *trap.delta_h_closed_form,
                                     imp.delta_h});
      } else {
        out.rows["fig1b"].push_back({dn, st.t_min, si.t_min, st.t_min_periods, st.t_min_large_n_periods,
                                     st.t_min_exact_periods});
      }
      out.report = json{{"trap", fermi_report(p, trap, st)}, {"impurity", fermi_report(p, imp, si)}};
      return out;
    }
    case Task::fig2: {
      const double lambda = p.get("lambda");
      const int n = static_cast<int>(p.get("n"));
      const auto spec = lmg_spec(c, lambda, n);
      const auto spectrum = lmg::quench_spectrum(spec, c.tolerances);
      const auto fmin = lmg::fmin_scan(spec, c.tolerances);
      const auto info = lmg::ground_info(lambda, n);
      out.rows["fig2"].push_back({lambda, static_cast<double>(n), static_cast<double>(info.j_crossings),
                                  fmin.f_min, fmin.t_min});
      out.rows["fig2_series"] = series_rows({lambda, static_cast<double>(n)}, spectrum.evaluate(spec.times));
      out.report = json{{"model", "lmg"}, {"point", p.key()}, {"warnings", fmin.warnings}};
      return out;
    }
    case Task::fig3: {
      const double lambda = p.get("lambda");
      const int n = static_cast<int>(p.get("n"));
      const auto fmin = lmg::fmin_scan(lmg_spec(c, lambda, n), c.tolerances);
      out.rows["fig3"].push_back({lambda, static_cast<double>(n), 1.0 / n, fmin.f_min, fmin.t_min});
      out.report = json{{"model", "lmg"}, {"point", p.key()}, {"warnings", fmin.warnings}};
      return out;
    }
    case Task::spectrum: {
      const int n = static_cast<int>(p.get("n"));
      const auto sweep = lmg::spectrum_sweep(n, ascending(c.lambda));
      for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
        for (std::size_t k = 0; k < sweep.levels[i].size(); ++k) {
          out.rows["spectrum"].push_back(
              {static_cast<double>(n), sweep.lambdas[i], static_cast<double>(k), sweep.levels[i][k]});
        }
        out.rows["ground"].push_back({static_cast<double>(n), sweep.lambdas[i], sweep.ground_m[i],
                                      sweep.ground_m[i] + 0.5 * n});
      }
      for (std::size_t j = 0; j < sweep.crossings.size(); ++j) {
        out.rows["crossings"].push_back({static_cast<double>(n), static_cast<double>(j), sweep.crossings[j]});
      }
      out.report = json{{"model", "lmg"}, {"point", p.key()}, {"crossings", sweep.crossings.size()}};
      return out;
    }
    case Task::supp_c: {
      const double eta = p.get("eta");
      const int n = static_cast<int>(p.get("n"));
      const double theta = c.thresholds.front();
      const auto run = trap_run(c, eta, n);
      const auto s = summarize(c, run, theta, eta);
      const auto& r = s.report;
      out.rows["supp_c"].push_back({eta, static_cast<double>(n), theta, s.t_min, r ? r->tau_qsl : kNaN,
                                    r ? opt(r->tau_ml) : kNaN, r ? opt(r->tau_w) : kNaN,
                                    r ? opt(r->tau_qsl_closed_form) : kNaN});
      out.report = fermi_report(p, run, s);
      return out;
    }
  }
  throw ConfigError("unknown task");
}

}  // namespace ocqsl::harness
