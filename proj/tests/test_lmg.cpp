#include <doctest.h>

#include <cmath>
#include <set>

#include "ocqsl/error.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/numerics/fit.hpp"

using namespace ocqsl;
using namespace ocqsl::lmg;

namespace {

LMGSpec spec(double lambda, int n, std::vector<double> times = {0.0}) {
  LMGSpec s;
  s.lambda = lambda;
  s.n_spins = n;
  s.times = std::move(times);
  return s;
}

}  // namespace

TEST_CASE("hamiltonian dimension and hermiticity") {
  for (int n : {2, 3, 10, 57}) {
    const auto h = build_hamiltonian(spec(1.3, n), true);
    CHECK(h.rows() == dimension(n));
    CHECK(h.rows() == 2 * static_cast<std::size_t>(n + 1));
    CHECK(h.hermiticity_defect() == 0.0);
  }
}

TEST_CASE("pre-quench hamiltonian is diagonal with the expanded energies") {
  for (int n = 2; n <= 6; ++n) {
    const double lambda = 0.7;
    const auto h = build_hamiltonian(spec(lambda, n), false);
    const double s = 0.5 * n;
    const auto sign = frozen_convention();
    for (int q = 0; q <= n; ++q) {
      const double m = q - s;
      for (int up = 0; up < 2; ++up) {
        const std::size_t i = state_index(q, up);
        const double sz = up ? 0.5 : -0.5;
        const double expected = -(lambda / n) * (2.0 * (s * (s + 1) - m * m) - n) -
                                2.0 * sign.bath * m - 2.0 * sign.impurity * sz;
        CHECK(h(i, i).real() == doctest::Approx(expected).epsilon(1e-14));
        for (std::size_t j = 0; j < h.cols(); ++j) {
          if (j != i) CHECK(h(i, j) == Complex(0.0));
        }
      }
    }
  }
}

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(spec(1.0, kMaxSpins + 1).validate(), DomainError);
  CHECK_THROWS_AS(spec(1.0, 1).validate(), DomainError);
  CHECK_THROWS_AS(spec(-0.1, 10).validate(), DomainError);
}

TEST_CASE("gamma defaults to lambda sqrt N") {
  auto s = spec(1.2, 100);
  CHECK(s.gamma() == doctest::Approx(12.0));
  s.gamma_override = 0.5;
  CHECK(s.gamma() == 0.5);
}

TEST_CASE("sign convention calibration") {
  CHECK(calibrate_sign_convention() == frozen_convention());
}

TEST_CASE("aligned phase has no crossings") {
  for (int n : {10, 200, 1000}) {
    const auto g = ground_info(0.9, n);
    CHECK(g.j_crossings == 0);
    CHECK(g.m_ground == -0.5 * n);
  }
}

TEST_CASE("distinct j values over lambda in [1, 2] grow linearly with N") {
  std::vector<double> ns, counts;
  for (int n : {20, 40, 80, 160}) {
    std::set<int> js;
    for (int i = 0; i <= 2000; ++i) js.insert(ground_info(1.0 + i * 0.0005, n).j_crossings);
    ns.push_back(n);
    counts.push_back(static_cast<double>(js.size()));
  }
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] > counts[i - 1]);
  CHECK(linear_fit(ns, counts).r_squared > 0.99);
}

TEST_CASE("ties go to the smaller j") {
  const auto crossings = crossing_points(10, 1.0, 2.0);
  REQUIRE(!crossings.empty());
  const auto at = ground_info(crossings.front(), 10);
  CHECK(at.j_crossings == 0);
  CHECK(ground_info(crossings.front() + 1e-9, 10).j_crossings == 1);
}

TEST_CASE("zero coupling keeps the survival at one") {
  auto s = spec(1.3, 50, uniform_grid(5.0, 64));
  s.gamma_override = 0.0;
  const auto chi = quench_chi(s);
  for (double f : chi.fidelity) CHECK(std::abs(f - 1.0) <= 1e-12);
  CHECK(fmin_scan(s).f_min == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("aligned-phase minimum does not depend on N") {
  const double a = fmin_scan(spec(0.9, 200)).f_min;
  const double b = fmin_scan(spec(0.9, 1000)).f_min;
  CHECK(std::abs(a / b - 1.0) < 0.01);
  CHECK(a > 0.1);
}

TEST_CASE("critical-phase minimum falls with N") {
  const double a = fmin_scan(spec(1.1, 200)).f_min;
  const double b = fmin_scan(spec(1.1, 1000)).f_min;
  CHECK(b < a);
  CHECK(b < 0.01);
}

TEST_CASE("closed-form spread") {
  CHECK(variance_closed_form(0, 100, 0.9 * 10.0) == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(variance_closed_form(100, 100, 5.0) == 0.0);
  for (int n : {10, 200, 1000}) {
    const auto v = variance_check(0.6, n, 0.6 * std::sqrt(double(n)));
    CHECK(v.closed_form == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(std::abs(v.brute_force - 1.2) <= 1e-10);
  }
}

TEST_CASE("closed-form spread matches brute force") {
  for (int n : {10, 50, 200}) {
    for (double lambda : {0.5, 1.2, 1.6}) {
      const auto v = variance_check(lambda, n, lambda * std::sqrt(double(n)));
      CHECK(std::abs(v.closed_form - v.brute_force) <= 1e-8);
    }
  }
}

TEST_CASE("conservation, weights and norm") {
  const auto s = spec(1.4, 40, uniform_grid(3.0, 16));
  const auto h = build_hamiltonian(s, true);
  CHECK(conserved_charge_defect(h, 40) <= 1e-12);

  const auto q = quench_spectrum(s);
  double total = 0.0;
  for (double p : q.weights) total += p;
  CHECK(std::abs(total - 1.0) <= 1e-10);

  const auto eig = eigh(h);
  const auto psi = initial_state(s);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
  for (double t : s.times) CHECK(std::abs(evolve(eig, psi, t).norm() - 1.0) <= 1e-10);
}

TEST_CASE("survival from evolution agrees with the spectral sum") {
  const auto s = spec(1.2, 30, uniform_grid(2.0, 9));
  const auto eig = eigh(build_hamiltonian(s, true));
  const auto psi = initial_state(s);
  const auto chi = quench_chi(s);
  const double e0 = expectation(build_hamiltonian(s, false), psi);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const auto evolved = evolve(eig, psi, s.times[i]);
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < psi.amplitudes.size(); ++k) {
      overlap += std::conj(psi.amplitudes[k]) * evolved.amplitudes[k];
    }
    overlap *= std::exp(Complex(0.0, e0 * s.times[i]));
    CHECK(std::abs(overlap - chi.chi[i]) <= 1e-10);
  }
}

TEST_CASE("crossing points") {
  const auto c10 = crossing_points(10, 1.0, 2.0);
  const auto c100 = crossing_points(100, 1.0, 2.0);
  CHECK(c100.size() > c10.size());
  REQUIRE(!c100.empty());
  CHECK(c100.front() > 1.0);
  CHECK(c100.front() < 1.1);
}

TEST_CASE("spectrum sweep ground level is flat below lambda = 1") {
  std::vector<double> grid;
  for (int i = 0; i <= 90; ++i) grid.push_back(0.01 * i);
  const auto sweep = spectrum_sweep(10, grid);
  for (double m : sweep.ground_m) CHECK(m == -5.0);
  CHECK(sweep.crossings.empty());
  for (const auto& levels : sweep.levels) CHECK(levels.size() == 11);
}

TEST_CASE("fmin decreases with N for lambda > 1") {
  double previous_f = 1.0, previous_t = INFINITY;
  for (int n : {200, 400, 800}) {
    const auto r = fmin_scan(spec(1.6, n));
    CHECK(r.f_min < previous_f);
    CHECK(r.t_min < previous_t);
    previous_f = r.f_min;
    previous_t = r.t_min;
  }
}
