#include "ocqsl/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ocqsl/error.hpp"

namespace ocqsl::harness {

namespace {

struct Named {
  const char* name;
  int value;
};

constexpr Named kModels[] = {{"fermi-trap", static_cast<int>(Model::fermi_trap)},
                             {"fermi-impurity", static_cast<int>(Model::fermi_impurity)},
                             {"lmg", static_cast<int>(Model::lmg)}};

constexpr Named kTasks[] = {{"qsl", static_cast<int>(Task::qsl)},
                            {"fig1a", static_cast<int>(Task::fig1a)},
                            {"fig1b", static_cast<int>(Task::fig1b)},
                            {"fig2", static_cast<int>(Task::fig2)},
                            {"fig3", static_cast<int>(Task::fig3)},
                            {"spectrum", static_cast<int>(Task::spectrum)},
                            {"supp-c", static_cast<int>(Task::supp_c)}};

template <std::size_t K>
int lookup(const Named (&table)[K], const std::string& name, const char* what) {
  for (const auto& e : table) {
    if (name == e.name) return e.value;
  }
  std::string known;
  for (const auto& e : table) known += std::string(known.empty() ? "" : ", ") + e.name;
  throw ConfigError(std::string("unknown ") + what + " '" + name + "' (expected one of " + known + ")");
}

template <std::size_t K>
std::string name_of(const Named (&table)[K], int value) {
  for (const auto& e : table) {
    if (e.value == value) return e.name;
  }
  return "?";
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("config: '" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config: '" + key + "' has the wrong type");
  }
}

template <typename T>
std::vector<T> list(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ConfigError("config: '" + key + "' must be a list");
  if (node.size() == 0) throw ConfigError("config: '" + key + "' must not be empty");
  std::vector<T> out;
  for (const auto& item : node) out.push_back(scalar<T>(item, key));
  return out;
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& known, const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) throw ConfigError("config: unknown key '" + where + key + "'");
  }
}

}  // namespace

std::string to_string(Model model) { return name_of(kModels, static_cast<int>(model)); }
Model parse_model(const std::string& name) { return static_cast<Model>(lookup(kModels, name, "model")); }
std::string to_string(Task task) { return name_of(kTasks, static_cast<int>(task)); }
Task parse_task(const std::string& name) { return static_cast<Task>(lookup(kTasks, name, "task")); }

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: YAML parse error: ") + e.what());
  }
  if (root.IsNull()) return base;
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  reject_unknown(root,
                 {"schema-version", "preset", "model", "task", "grid", "time", "thresholds", "output",
                  "tolerances", "jobs"},
                 "");

  RunConfig c = base;
  if (!root["schema-version"]) throw ConfigError("config: missing 'schema-version'");
  c.schema_version = scalar<int>(root["schema-version"], "schema-version");
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("config: unsupported schema-version " + std::to_string(c.schema_version));
  }
  if (root["preset"]) c.preset = scalar<std::string>(root["preset"], "preset");
  if (root["model"]) c.model = parse_model(scalar<std::string>(root["model"], "model"));
  if (root["task"]) c.task = parse_task(scalar<std::string>(root["task"], "task"));
  if (const auto grid = root["grid"]) {
    if (!grid.IsMap()) throw ConfigError("config: 'grid' must be a mapping");
    reject_unknown(grid, {"eta", "kappa", "lambda", "n"}, "grid.");
    if (grid["eta"]) c.eta = list<double>(grid["eta"], "grid.eta");
    if (grid["kappa"]) c.kappa = list<double>(grid["kappa"], "grid.kappa");
    if (grid["lambda"]) c.lambda = list<double>(grid["lambda"], "grid.lambda");
    if (grid["n"]) c.n = list<int>(grid["n"], "grid.n");
  }
  if (const auto time = root["time"]) {
    if (!time.IsMap()) throw ConfigError("config: 'time' must be a mapping");
    reject_unknown(time, {"points", "extent"}, "time.");
    if (time["points"]) {
      const int points = scalar<int>(time["points"], "time.points");
      if (points < 3) throw ConfigError("config: time.points must be >= 3");
      c.time.points = static_cast<std::size_t>(points);
    }
    if (time["extent"]) c.time.extent = scalar<double>(time["extent"], "time.extent");
  }
  if (root["thresholds"]) c.thresholds = list<double>(root["thresholds"], "thresholds");
  if (root["output"]) c.output = scalar<std::string>(root["output"], "output");
  if (root["jobs"]) c.jobs = scalar<int>(root["jobs"], "jobs");
  if (const auto tol = root["tolerances"]) {
    if (!tol.IsMap()) throw ConfigError("config: 'tolerances' must be a mapping");
    for (const auto& kv : tol) {
      const auto key = kv.first.as<std::string>();
      bool found = false;
      for (const auto& f : kToleranceFields) {
        if (key == f.name) {
          c.tolerances.*f.member = scalar<double>(kv.second, "tolerances." + key);
          found = true;
        }
      }
      if (!found) throw ConfigError("config: unknown tolerance '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

namespace {

void emit_config(YAML::Emitter& out, const RunConfig& c, bool with_io) {
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema-version" << YAML::Value << c.schema_version;
  out << YAML::Key << "preset" << YAML::Value << c.preset;
  out << YAML::Key << "model" << YAML::Value << to_string(c.model);
  out << YAML::Key << "task" << YAML::Value << to_string(c.task);
  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  auto seq = [&](const char* key, const auto& values) {
    if (values.empty()) return;
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& v : values) out << v;
    out << YAML::EndSeq;
  };
  seq("eta", c.eta);
  seq("kappa", c.kappa);
  seq("lambda", c.lambda);
  seq("n", c.n);
  out << YAML::EndMap;
  out << YAML::Key << "time" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "points" << YAML::Value << c.time.points;
  out << YAML::Key << "extent" << YAML::Value << c.time.extent;
  out << YAML::EndMap;
  seq("thresholds", c.thresholds);
  if (with_io) {
    out << YAML::Key << "output" << YAML::Value << c.output;
    out << YAML::Key << "jobs" << YAML::Value << c.jobs;
  }
  out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  for (const auto& f : kToleranceFields) {
    out << YAML::Key << std::string(f.name) << YAML::Value << c.tolerances.*f.member;
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
}

}  // namespace

std::string dump_config(const RunConfig& config) {
  YAML::Emitter out;
  emit_config(out, config, true);
  return std::string(out.c_str()) + "\n";
}

void validate(const RunConfig& c) {
  if (c.schema_version != kSchemaVersion) throw ConfigError("config: unsupported schema-version");
  for (double v : c.eta) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("config: every eta must be > 0");
  }
  for (double v : c.kappa) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("config: every kappa must be >= 0");
  }
  for (double v : c.lambda) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("config: every lambda must be >= 0");
  }
  for (int v : c.n) {
    if (v < 1) throw ConfigError("config: every n must be >= 1");
  }
  for (double v : c.thresholds) {
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("config: thresholds must lie in (0, 1]");
  }
  if (c.time.points < 3) throw ConfigError("config: time.points must be >= 3");
  if (!(c.time.extent >= 0.0) || !std::isfinite(c.time.extent)) {
    throw ConfigError("config: time.extent must be >= 0");
  }
  if (c.jobs < 1) throw ConfigError("config: jobs must be >= 1");
  if (c.output.empty()) throw ConfigError("config: output directory must be set");
  for (const auto& f : kToleranceFields) {
    const double v = c.tolerances.*f.member;
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError("config: tolerance '" + std::string(f.name) + "' must be > 0");
    }
  }

  auto need = [&](bool present, const char* what) {
    if (!present) {
      throw ConfigError("config: task '" + to_string(c.task) + "' needs a non-empty " + what);
    }
  };
  need(!c.n.empty(), "grid.n");
  switch (c.task) {
    case Task::qsl:
      if (c.model == Model::fermi_trap) need(!c.eta.empty(), "grid.eta");
      if (c.model == Model::fermi_impurity) need(!c.kappa.empty(), "grid.kappa");
      if (c.model == Model::lmg) need(!c.lambda.empty(), "grid.lambda");
      if (c.model != Model::lmg) need(!c.thresholds.empty(), "thresholds list");
      break;
    case Task::fig1a:
    case Task::fig1b:
      need(c.eta.size() == 1, "grid.eta with exactly one value");
      need(c.kappa.size() == 1, "grid.kappa with exactly one value");
      need(c.thresholds.size() == 2, "thresholds list of [trap, impurity]");
      break;
    case Task::fig2:
    case Task::fig3:
    case Task::spectrum:
      need(!c.lambda.empty(), "grid.lambda");
      break;
    case Task::supp_c:
      need(!c.eta.empty(), "grid.eta");
      need(c.thresholds.size() == 1, "thresholds list with one value");
      break;
  }
  for (int v : c.n) {
    if (c.model == Model::lmg && v < 2) throw ConfigError("config: lmg needs n >= 2");
  }
}

void prepare_output(const RunConfig& c) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.output, ec);
  if (ec) throw ConfigError("config: cannot create output directory '" + c.output + "': " + ec.message());
  const auto probe = fs::path(c.output) / ".write-test";
  {
    std::ofstream out(probe);
    if (!out) throw ConfigError("config: output directory '" + c.output + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::uint64_t config_hash(const RunConfig& config) {
  YAML::Emitter out;
  emit_config(out, config, false);
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = out.c_str(); *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ocqsl::harness
