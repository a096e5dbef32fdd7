#include "ocqsl/harness/presets.hpp"

#include <cmath>

#include "ocqsl/error.hpp"

namespace ocqsl::harness {

namespace {

std::vector<int> int_range(int first, int last, int step) {
  std::vector<int> out;
  for (int v = first; v <= last; v += step) out.push_back(v);
  return out;
}

// first + k * step for k = 0..count-1, rounded to 12 digits so the values
// print exactly as typed.
std::vector<double> real_range(double first, double step, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(std::round((first + k * step) * 1e12) / 1e12);
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1a", "fig1b", "fig2", "fig3a", "fig3b", "supp-a", "supp-b", "supp-c"};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  c.output = "out/" + name;
  if (name == "fig1a" || name == "fig1b") {
    c.model = Model::fermi_trap;
    c.task = name == "fig1a" ? Task::fig1a : Task::fig1b;
    c.eta = {1.5};
    c.kappa = {0.5};
    c.n = int_range(10, 100, 10);
    c.thresholds = {1e-2, 0.25};
    c.time.points = 256;
  } else if (name == "fig2") {
    c.model = Model::lmg;
    c.task = Task::fig2;
    c.lambda = {0.9, 1.1};
    c.n = {200, 1000};
    c.time.points = 2048;
  } else if (name == "fig3a") {
    c.model = Model::lmg;
    c.task = Task::fig3;
    c.lambda = real_range(1.2, 0.2, 5);
    c.n = int_range(200, 1000, 200);
    c.time.points = 2048;
  } else if (name == "fig3b") {
    c.model = Model::lmg;
    c.task = Task::fig3;
    c.lambda = {1.2, 1.6, 2.0};
    c.n = {100, 200, 400, 600, 800, 1000};
    c.time.points = 2048;
  } else if (name == "supp-a") {
    c.model = Model::lmg;
    c.task = Task::qsl;
    c.lambda = real_range(0.1, 0.1, 20);
    c.n = {200, 1000};
    c.time.points = 2048;
  } else if (name == "supp-b") {
    c.model = Model::lmg;
    c.task = Task::spectrum;
    c.lambda = real_range(0.0, 0.01, 201);
    c.n = {10, 100};
  } else if (name == "supp-c") {
    c.model = Model::fermi_trap;
    c.task = Task::supp_c;
    c.eta = {4.0};
    c.n = {2, 3, 5, 10, 20, 50, 100};
    c.thresholds = {0.25};
    c.time.points = 256;
  } else {
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    throw ConfigError("unknown preset '" + name + "' (expected one of " + known + ")");
  }
  return c;
}

}  // namespace ocqsl::harness
