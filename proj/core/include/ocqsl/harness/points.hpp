#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ocqsl/harness/config.hpp"

namespace ocqsl::harness {

/// One CSV output: file stem and column order.
struct Family {
  std::string name;
  std::vector<std::string> columns;
};

/// A parameter point, e.g. {eta: 1.5, n: 10, theta: 0.01}.
struct Point {
  std::vector<std::pair<std::string, double>> params;

  double get(const std::string& name) const;
  /// Stable file-name-safe key, exact in every parameter.
  std::string key() const;
};

/// Rows per family plus an optional report dump.
struct PointResult {
  std::map<std::string, std::vector<std::vector<double>>> rows;
  nlohmann::json report;

  friend bool operator==(const PointResult&, const PointResult&) = default;
};

nlohmann::json to_json(const PointResult& result);
PointResult point_result_from_json(const nlohmann::json& j);

std::vector<Family> families(const RunConfig& config);

/// Points of a validated config in ascending parameter order.
std::vector<Point> enumerate_points(const RunConfig& config);

/// Pure: depends only on the config (minus output and jobs) and the point.
PointResult compute_point(const RunConfig& config, const Point& point);

}  // namespace ocqsl::harness
