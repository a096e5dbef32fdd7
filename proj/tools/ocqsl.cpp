#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ocqsl/error.hpp"
#include "ocqsl/harness/config.hpp"
#include "ocqsl/harness/csv.hpp"
#include "ocqsl/harness/presets.hpp"
#include "ocqsl/harness/sweep.hpp"
#include "ocqsl/harness/verify.hpp"
#include "ocqsl/spectral/spectral.hpp"

namespace {

using namespace ocqsl;
using namespace ocqsl::harness;

constexpr int kOk = 0;
constexpr int kComputeFailure = 1;
constexpr int kConfigError = 2;

void apply_tolerance(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tolerance expects name=value, got '" + assignment + "'");
  const auto name = assignment.substr(0, eq);
  for (const auto& f : kToleranceFields) {
    if (name == f.name) {
      try {
        tol.*f.member = std::stod(assignment.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--tolerance " + name + ": not a number");
      }
      return;
    }
  }
  throw ConfigError("unknown tolerance '" + name + "'");
}

int cmd_run(const std::string& config_path, const std::string& preset_name, const std::string& out, int jobs) {
  if (config_path.empty() && preset_name.empty()) throw ConfigError("run needs --config and/or --preset");
  RunConfig base = preset_name.empty() ? RunConfig{} : preset(preset_name);
  RunConfig config = config_path.empty() ? base : load_config(config_path, base);
  if (!out.empty()) config.output = out;
  if (jobs > 0) config.jobs = jobs;
  const auto summary = run(config, &std::cerr);
  std::cout << "points " << summary.points << ", computed " << summary.computed << ", cached "
            << summary.cached << ", failed " << summary.failures.size() << " (config " << summary.config_hash
            << ")\n";
  for (const auto& f : summary.failures) std::cout << "failed " << f.point << ": " << f.error << '\n';
  for (const auto& path : summary.outputs) std::cout << "wrote " << path << '\n';
  return summary.ok() ? kOk : kComputeFailure;
}

int cmd_verify(bool quick, const std::string& config_path, const std::vector<std::string>& overrides) {
  Tolerances tol;
  if (!config_path.empty()) tol = load_config(config_path).tolerances;
  for (const auto& o : overrides) apply_tolerance(tol, o);
  const auto report = verify(quick, tol, &std::cout);
  std::cout << (report.ok() ? "verify: all checks passed" : "verify: " + std::to_string(report.failures()) + " check(s) failed")
            << " (" << report.checks.size() << " checks)\n";
  return report.ok() ? kOk : kComputeFailure;
}

int cmd_spectral(const std::string& input, const std::string& window_name, const std::string& output) {
  const auto window = spectral::parse_window(window_name);
  const auto table = read_csv(input);
  const std::size_t it = table.column("t"), ire = table.column("chi_re"), iim = table.column("chi_im");
  std::vector<std::size_t> keys;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c != it && c != ire && c != iim && table.columns[c] != "fidelity") keys.push_back(c);
  }

  Table result;
  for (auto k : keys) result.columns.push_back(table.columns[k]);
  result.columns.push_back("omega");
  result.columns.push_back("s");

  std::size_t row = 0;
  while (row < table.rows.size()) {
    std::vector<double> key;
    for (auto k : keys) key.push_back(table.rows[row][k]);
    SurvivalSeries series;
    for (; row < table.rows.size(); ++row) {
      const auto& r = table.rows[row];
      bool same = true;
      for (std::size_t i = 0; i < keys.size(); ++i) same = same && r[keys[i]] == key[i];
      if (!same) break;
      const Complex chi(r[ire], r[iim]);
      const double mod = std::abs(chi);
      series.push(r[it], std::log(mod), mod > 0.0 ? chi / mod : Complex(1.0));
    }
    const auto s = spectral::spectral_function(series, window);
    for (std::size_t k = 0; k < s.omegas.size(); ++k) {
      auto out_row = key;
      out_row.push_back(s.omegas[k]);
      out_row.push_back(s.values[k]);
      result.rows.push_back(std::move(out_row));
    }
  }
  if (output.empty()) {
    std::cout << to_csv(result);
  } else {
    write_csv(output, result);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quench dynamics, survival probabilities and quantum speed limits"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out, input, window = "none", output;
  int jobs = 0;
  bool quick = false;
  std::vector<std::string> overrides;

  auto* run_cmd = app.add_subcommand("run", "Run a parameter sweep and write CSV + JSON outputs");
  run_cmd->add_option("--config", config_path, "YAML run config");
  run_cmd->add_option("--preset", preset_name, "Figure preset: fig1a fig1b fig2 fig3a fig3b supp-a supp-b supp-c");
  run_cmd->add_option("--out", out, "Output directory (overrides the config)");
  run_cmd->add_option("--jobs", jobs, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite");
  verify_cmd->add_flag("--quick", quick, "Smaller sizes");
  verify_cmd->add_option("--config", config_path, "Take tolerances from this run config");
  verify_cmd->add_option("--tolerance", overrides, "Override a tolerance, name=value (repeatable)");

  auto* spectral_cmd = app.add_subcommand("spectral", "Spectral function of chi(t) series in a CSV");
  spectral_cmd->add_option("--input", input, "CSV with t, chi_re, chi_im columns")->required();
  spectral_cmd->add_option("--window", window, "hann or none")->check(CLI::IsMember({"hann", "none"}));
  spectral_cmd->add_option("--output", output, "Write CSV here instead of stdout");

  app.add_subcommand("presets", "List figure presets")->callback([] {
    for (const auto& name : preset_names()) std::cout << name << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, preset_name, out, jobs);
    if (*verify_cmd) return cmd_verify(quick, config_path, overrides);
    if (*spectral_cmd) return cmd_spectral(input, window, output);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputeFailure;
  }
}
