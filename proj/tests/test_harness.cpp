#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ocqsl/error.hpp"
#include "ocqsl/harness/config.hpp"
#include "ocqsl/harness/csv.hpp"
#include "ocqsl/harness/points.hpp"
#include "ocqsl/harness/presets.hpp"
#include "ocqsl/harness/sweep.hpp"
#include "ocqsl/harness/verify.hpp"

using namespace ocqsl;
using namespace ocqsl::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ocqsl_test_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_lmg(const fs::path& out) {
  RunConfig c = parse_config(R"(
schema-version: 1
model: lmg
grid:
  lambda: [0.9, 1.3]
  n: [10, 20]
time:
  points: 64
)");
  c.output = out.string();
  return c;
}

}  // namespace

TEST_CASE("config round-trips through the dump") {
  for (const auto& name : preset_names()) {
    const auto c = preset(name);
    CHECK(parse_config(dump_config(c)) == c);
  }
  auto c = small_lmg("x");
  c.tolerances.analytic = 3.5e-7;
  c.jobs = 3;
  CHECK(parse_config(dump_config(c)) == c);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("model: lmg\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema-version: 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema-version: 1\nbogus: 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema-version: 1\ngrid: {n: []}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema-version: 1\nmodel: spin-glass\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema-version: 1\ntolerances: {nope: 1}\n"), ConfigError);
}

TEST_CASE("empty grid fails validation before any computation") {
  const auto out = scratch("empty");
  RunConfig c = parse_config("schema-version: 1\nmodel: lmg\ngrid: {lambda: [0.5]}\n");
  c.output = out.string();
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(run(c), ConfigError);
  CHECK(!fs::exists(out));
}

TEST_CASE("config hash ignores output and jobs") {
  auto a = small_lmg("a"), b = small_lmg("b");
  b.jobs = 4;
  CHECK(config_hash(a) == config_hash(b));
  b.n.push_back(30);
  CHECK(config_hash(a) != config_hash(b));
  CHECK(hash_hex(config_hash(a)).size() == 16);
}

TEST_CASE("csv numbers carry 12 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  Table t{{"a", "b"}, {{1.5, 2.0}, {NAN, 1e-20}}};
  const auto back = parse_csv(to_csv(t));
  CHECK(back.columns == t.columns);
  CHECK(back.rows[0] == t.rows[0]);
  CHECK(std::isnan(back.rows[1][0]));
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a\nx\n"), ConfigError);
}

TEST_CASE("fig1a preset columns and parameters") {
  const auto c = preset("fig1a");
  CHECK(c.eta == std::vector<double>{1.5});
  CHECK(c.kappa == std::vector<double>{0.5});
  const auto f = families(c);
  REQUIRE(f.size() == 1);
  CHECK(std::vector<std::string>(f[0].columns.begin(), f[0].columns.begin() + 3) ==
        std::vector<std::string>{"n", "tau_qsl_trap", "tau_qsl_impurity"});
}

TEST_CASE("fig3a preset grid and columns") {
  const auto c = preset("fig3a");
  CHECK(c.lambda.size() == 5);
  CHECK(c.n == std::vector<int>{200, 400, 600, 800, 1000});
  const auto pts = enumerate_points(c);
  CHECK(pts.size() == 25);
  const auto cols = families(c)[0].columns;
  for (const char* name : {"lambda", "n", "f_min", "t_min"}) {
    CHECK(std::find(cols.begin(), cols.end(), name) != cols.end());
  }
  CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("points are sorted and keys are exact") {
  const auto pts = enumerate_points(small_lmg("x"));
  REQUIRE(pts.size() == 4);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].key() < pts[i].key());
  CHECK(pts[0].get("lambda") == 0.9);
}

TEST_CASE("point results survive the json cache format") {
  const auto c = small_lmg("x");
  for (const auto& p : enumerate_points(c)) {
    const auto r = compute_point(c, p);
    CHECK(point_result_from_json(to_json(r)) == r);
  }
}

TEST_CASE("identical configs write identical csv bodies") {
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  auto c1 = small_lmg(d1), c2 = small_lmg(d2);
  c2.jobs = 2;
  const auto s1 = run(c1), s2 = run(c2);
  CHECK(s1.ok());
  CHECK(s2.ok());
  CHECK(s1.computed == 4);
  for (const auto& f : families(c1)) {
    const auto name = f.name + ".csv";
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  }
  CHECK(fs::exists(d1 / "manifest.json"));
  CHECK(fs::exists(d1 / "reports.json"));
}

TEST_CASE("rerun loads every point from the cache with equal output") {
  const auto d = scratch("cache");
  const auto c = small_lmg(d);
  run(c);
  const auto first = slurp(d / "lmg_qsl.csv");
  const auto again = run(c);
  CHECK(again.cached == again.points);
  CHECK(again.computed == 0);
  CHECK(slurp(d / "lmg_qsl.csv") == first);
}

TEST_CASE("verify negative control names the violated invariant") {
  Tolerances tol;
  tol.analytic = 1e-20;
  const auto report = verify(true, tol);
  CHECK(!report.ok());
  bool named = false;
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::fail && c.name.find("fermi.closed-form-vs-det") != std::string::npos) named = true;
  }
  CHECK(named);
}

TEST_CASE("verify quick suite passes with default tolerances") {
  const auto report = verify(true);
  for (const auto& c : report.checks) {
    INFO(format_check(c));
    CHECK(c.status != CheckStatus::fail);
  }
}
