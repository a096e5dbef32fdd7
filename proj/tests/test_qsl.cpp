#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/numerics/fit.hpp"
#include "ocqsl/numerics/linalg.hpp"
#include "ocqsl/qsl/qsl.hpp"

using namespace ocqsl;
using namespace ocqsl::qsl;

namespace {

constexpr double kPi = std::numbers::pi;

lmg::LMGSpec lmg_spec(double lambda, int n, std::vector<double> times) {
  lmg::LMGSpec s;
  s.lambda = lambda;
  s.n_spins = n;
  s.times = std::move(times);
  return s;
}

}  // namespace

TEST_CASE("bures angle") {
  CHECK(bures_angle(1.0) == 0.0);
  CHECK(bures_angle(0.0) == doctest::Approx(kPi / 2));
  CHECK(bures_angle(0.979796) == doctest::Approx(0.2013).epsilon(1e-3));
  CHECK(bures_angle(Complex(0.0, 1.0 + 1e-8)) == 0.0);
  CHECK_THROWS_AS(bures_angle(1.0 + 1e-5), InvalidOverlap);
  CHECK_THROWS_AS(bures_angle(Complex(NAN, 0.0)), NonFiniteError);
}

TEST_CASE("mandelstam-tamm time") {
  CHECK(tau_qsl(1.0, 2.0) == 0.0);
  CHECK(tau_qsl(0.0, 1.8) == doctest::Approx(0.8727).epsilon(1e-4));
  CHECK_THROWS_AS(tau_qsl(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(tau_qsl(0.5, -1.0), DomainError);
}

TEST_CASE("mandelstam-tamm time is nonincreasing in the spread") {
  double previous = INFINITY;
  for (double dh = 0.1; dh < 10.0; dh *= 1.7) {
    const double t = tau_qsl(0.3, dh);
    CHECK(t <= previous);
    previous = t;
  }
}

TEST_CASE("trap quench time with the large-N spread scales as 1/N") {
  std::vector<double> xs, ys;
  for (int n = 10; n <= 100; n += 10) {
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(tau_qsl(std::sqrt(1e-2), fermi::delta_h_closed_form(1.5, n).large_n)));
  }
  CHECK(std::abs(linear_fit(xs, ys).slope + 1.0) <= 0.02);
}

TEST_CASE("work bound") {
  CHECK(tau_work(1.0, 3.125) == 0.0);
  CHECK(tau_work(0.0, 3.125) == doctest::Approx(0.32));
  CHECK(fermi::mean_work_closed_form(1.5, 10) == doctest::Approx(3.125));
  CHECK_THROWS_AS(tau_work(0.5, 0.0), UndefinedBound);
}

TEST_CASE("mean work vanishes without a quench") {
  QuenchSpectrum s;
  s.energies = {1.0, 2.0};
  s.weights = {1.0, 0.0};
  s.initial_energy = 1.0;
  CHECK(mean_work(s) == 0.0);
  const auto b = fermi::trap_basis(1.0, 5);
  CHECK(std::abs(fermi::spectral_mean_work(b, 5)) <= 1e-12);
}

TEST_CASE("LMG spectral mean work equals the expectation of H_f - H_i") {
  for (double lambda : {0.9, 1.3}) {
    const auto s = lmg_spec(lambda, 60, {0.0});
    const auto psi = lmg::initial_state(s);
    const double direct = lmg::expectation(lmg::build_hamiltonian(s, true), psi) -
                          lmg::expectation(lmg::build_hamiltonian(s, false), psi);
    CHECK(std::abs(mean_work(lmg::quench_spectrum(s)) - direct) <= 1e-10);
  }
}

TEST_CASE("trap spectral mean work equals the diagonal expectation and N times the closed form") {
  const auto b = fermi::trap_basis(1.5, 6);
  const auto h = fermi::trap_final_hamiltonian(1.5, b.cutoff());
  CHECK(fermi::spectral_mean_work(b, 6) == doctest::Approx(fermi::slater_mean_work(h, 6)).epsilon(1e-8));
  CHECK(fermi::spectral_mean_work(b, 6) == doctest::Approx(6 * fermi::mean_work_closed_form(1.5, 6)));
}

TEST_CASE("margolus-levitin comparator") {
  CHECK(tau_ml(1.0, 2.0) == 0.0);
  CHECK(tau_ml(0.0, 2.0) == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(tau_ml(0.5, 0.0), DomainError);
}

TEST_CASE("report keeps both spreads and omits undefined bounds") {
  QSLInputs in;
  in.t_reference = 0.4;
  in.chi = 0.6;
  in.delta_h_bruteforce = 2.0;
  in.delta_h_closed_form = 1.5;
  in.mean_work = 0.0;
  const auto r = make_report(in);
  CHECK(r.tau_qsl == doctest::Approx(std::acos(0.6) / 2.0));
  CHECK(r.tau_qsl_source == VarianceSource::bruteforce);
  REQUIRE(r.tau_qsl_closed_form);
  CHECK(*r.tau_qsl_closed_form == doctest::Approx(std::acos(0.6) / 1.5));
  CHECK(!r.tau_w);
  CHECK(!r.tau_ml);
  CHECK(r.bures_angle >= 0.0);
  CHECK(r.bures_angle <= kPi / 2);
}

TEST_CASE("bounds hold on a trap trajectory") {
  fermi::TrapQuench q;
  q.eta = 1.5;
  q.n_particles = 6;
  q.times = uniform_grid(kPi / 1.5, 128);
  const auto series = fermi::survival_series_det(q);
  const double dh = fermi::many_body_variance(q);
  const auto basis = fermi::trap_basis(1.5, 6);
  const auto c = check_bounds(series, dh, fermi::spectral_mean_work(basis, 6));
  CHECK(c.mt_violations == 0);
  CHECK(c.work_defined);
  CHECK(c.work_violations == 0);
  CHECK(c.ok());
}

TEST_CASE("MT bound holds on LMG trajectories and the work bound is undefined") {
  for (double lambda : {0.9, 1.1}) {
    auto s = lmg_spec(lambda, 100, {});
    s.times = lmg::default_scan_grid(s, 256);
    const auto spectrum = lmg::quench_spectrum(s);
    const auto series = spectrum.evaluate(s.times);
    const auto v = lmg::variance_check(lambda, 100, s.gamma());
    const auto c = check_bounds(series, v.brute_force, mean_work(spectrum));
    CHECK(c.mt_violations == 0);
    CHECK(!c.work_defined);
    CHECK(std::abs(mean_work(spectrum)) <= 1e-10);
  }
}

TEST_CASE("fisher velocity equals the energy spread") {
  const double eta = 1.5;
  const auto basis = fermi::trap_basis(eta, 4);
  fermi::TrapQuench q;
  q.eta = eta;
  q.n_particles = 4;
  const double dh = fermi::many_body_variance(q);
  const auto log_abs = [&](double t) {
    return 0.5 * fermi::survival_series_det(basis, 4, {0.0, t}).log_fidelity[1];
  };
  const auto v = fisher_velocity(log_abs, 0.02 / dh);
  CHECK(std::abs(v.velocity / dh - 1.0) <= 1e-3);

  auto s = lmg_spec(1.2, 50, {0.0});
  const auto spectrum = lmg::quench_spectrum(s);
  const double dl = lmg::variance_check(1.2, 50, s.gamma()).brute_force;
  const auto vl = fisher_velocity([&](double t) { return std::log(std::abs(spectrum.chi(t))); }, 0.02 / dl);
  CHECK(std::abs(vl.velocity / dl - 1.0) <= 1e-3);
  CHECK_THROWS_AS(fisher_velocity(log_abs, 0.0), DomainError);
}
