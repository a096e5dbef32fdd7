#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocqsl/numerics/tolerances.hpp"

namespace ocqsl::harness {

inline constexpr int kSchemaVersion = 1;

enum class Model { fermi_trap, fermi_impurity, lmg };

std::string to_string(Model model);
Model parse_model(const std::string& name);

/// What is computed per parameter point; presets pick one, plain configs
/// get the model default (`qsl`).
enum class Task { qsl, fig1a, fig1b, fig2, fig3, spectrum, supp_c };

std::string to_string(Task task);
Task parse_task(const std::string& name);

struct TimeSettings {
  /// Samples per trajectory.
  std::size_t points = 256;
  /// Grid extent; 0 picks the model default.
  double extent = 0.0;

  friend bool operator==(const TimeSettings&, const TimeSettings&) = default;
};

/// One run. Grid lists that the task does not use are ignored but still
/// validated when present.
struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string preset;
  Model model = Model::fermi_trap;
  Task task = Task::qsl;
  std::vector<double> eta;
  std::vector<double> kappa;
  std::vector<double> lambda;
  std::vector<int> n;
  TimeSettings time;
  std::vector<double> thresholds;
  std::string output = "out";
  Tolerances tolerances;
  int jobs = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses YAML text on top of `base`; keys present in the text replace the
/// base values. Throws ConfigError on unknown keys, bad types or an
/// unsupported schema-version.
RunConfig parse_config(const std::string& text, const RunConfig& base = {});
RunConfig load_config(const std::string& path, const RunConfig& base = {});

/// Canonical YAML with every field resolved; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// Throws ConfigError for out-of-domain values and for lists the task needs
/// but the config leaves empty.
void validate(const RunConfig& config);

/// Creates the output directory and checks it is writable.
void prepare_output(const RunConfig& config);

/// FNV-1a over the canonical dump without `output` and `jobs`.
std::uint64_t config_hash(const RunConfig& config);
std::string hash_hex(std::uint64_t hash);

}  // namespace ocqsl::harness
