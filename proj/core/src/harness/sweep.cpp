#include "ocqsl/harness/sweep.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "ocqsl/error.hpp"
#include "ocqsl/harness/csv.hpp"
#include "ocqsl/harness/points.hpp"

#ifndef OCQSL_VERSION
#define OCQSL_VERSION "unknown"
#endif

namespace ocqsl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<PointResult> load_cached(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return point_result_from_json(json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write '" + tmp + "'");
  }
  fs::rename(tmp, path);
}

}  // namespace

SweepSummary run(const RunConfig& config, std::ostream* log) {
  validate(config);
  prepare_output(config);

  SweepSummary summary;
  summary.config_hash = hash_hex(config_hash(config));
  const fs::path out_dir(config.output);
  const fs::path cache_dir = out_dir / "cache" / summary.config_hash;
  fs::create_directories(cache_dir);

  const auto points = enumerate_points(config);
  summary.points = points.size();
  std::vector<std::optional<PointResult>> results(points.size());
  std::vector<std::string> errors(points.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < points.size(); ++i) {
    results[i] = load_cached(cache_dir / (points[i].key() + ".json"));
    if (results[i]) {
      ++summary.cached;
    } else {
      pending.push_back(i);
    }
  }

  std::mutex io;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pending.size(); k = next++) {
      const std::size_t i = pending[k];
      try {
        auto r = compute_point(config, points[i]);
        const auto text = to_json(r).dump();
        std::lock_guard lock(io);
        write_text(cache_dir / (points[i].key() + ".json"), text);
        results[i] = std::move(r);
        if (log) *log << "done " << points[i].key() << '\n';
      } catch (const std::exception& e) {
        std::lock_guard lock(io);
        errors[i] = e.what();
        if (log) *log << "FAILED " << points[i].key() << ": " << e.what() << '\n';
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), pending.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  if (threads > 0) worker();
  for (auto& t : pool) t.join();
  summary.computed = pending.size();

  json reports = json::array();
  json failures = json::array();
  std::map<std::string, Table> tables;
  for (const auto& f : families(config)) tables[f.name].columns = f.columns;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!results[i]) {
      summary.failures.push_back({points[i].key(), errors[i]});
      failures.push_back({{"point", points[i].key()}, {"error", errors[i]}});
      continue;
    }
    for (const auto& [family, rows] : results[i]->rows) {
      auto& table = tables.at(family);
      table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    reports.push_back({{"point", points[i].key()}, {"report", results[i]->report}});
  }
  for (const auto& f : families(config)) {
    const auto path = out_dir / (f.name + ".csv");
    write_csv(path.string(), tables.at(f.name));
    summary.outputs.push_back(path.string());
  }
  write_text(out_dir / "reports.json", reports.dump(2) + "\n");
  summary.outputs.push_back((out_dir / "reports.json").string());

  json manifest{{"config_hash", summary.config_hash},
                {"code_version", OCQSL_VERSION},
                {"timestamp", utc_timestamp()},
                {"preset", config.preset},
                {"model", to_string(config.model)},
                {"task", to_string(config.task)},
                {"config", dump_config(config)},
                {"points", summary.points},
                {"computed", summary.computed},
                {"cached", summary.cached},
                {"failures", failures},
                {"outputs", summary.outputs}};
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  summary.outputs.push_back((out_dir / "manifest.json").string());
  return summary;
}

}  // namespace ocqsl::harness
