#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ocqsl/harness/config.hpp"

namespace ocqsl::harness {

struct PointFailure {
  std::string point;
  std::string error;
};

struct SweepSummary {
  std::string config_hash;
  std::size_t points = 0;
  std::size_t computed = 0;
  std::size_t cached = 0;
  std::vector<PointFailure> failures;
  /// CSV, report and manifest paths, in write order.
  std::vector<std::string> outputs;

  bool ok() const { return failures.empty(); }
};

/// Runs every point of a config and writes <output>/<family>.csv,
/// <output>/reports.json and <output>/manifest.json.
///
/// Points already present in <output>/cache/<hash>/ are loaded instead of
/// recomputed. Points run on `config.jobs` threads; output rows follow the
/// sorted point order regardless of completion order. Failed points are
/// listed in the manifest and left out of the CSVs.
SweepSummary run(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace ocqsl::harness
