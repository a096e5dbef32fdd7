#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ocqsl/error.hpp"
#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/numerics/linalg.hpp"
#include "ocqsl/qsl/qsl.hpp"
#include "ocqsl/spectral/spectral.hpp"

using namespace ocqsl;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

ComplexMatrix random_matrix(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(uniform(-1, 1), uniform(-1, 1));
  }
  return m;
}

ComplexMatrix random_hermitian(std::size_t n) {
  const auto m = random_matrix(n);
  return 0.5 * (m + m.adjoint());
}

int parity(const std::vector<std::size_t>& perm) {
  int swaps = 0;
  auto p = perm;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      ++swaps;
    }
  }
  return swaps % 2 ? -1 : 1;
}

fermi::TrapQuench random_trap(int max_n, std::size_t points) {
  fermi::TrapQuench q;
  q.eta = uniform(1.1, 3.0);
  q.n_particles = uniform_int(1, max_n);
  q.times = uniform_grid(kPi / q.eta, points);
  return q;
}

}  // namespace

TEST_CASE("row permutation flips the determinant by its parity") {
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = uniform_int(2, 9);
    const auto a = random_matrix(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng());
    ComplexMatrix pa(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pa(i, j) = a(perm[i], j);
    }
    const Complex d = determinant(a);
    CHECK(std::abs(determinant(pa) - double(parity(perm)) * d) <= 1e-12 * std::abs(d));
  }
}

TEST_CASE("unitary matrices have unit determinant modulus") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = eigh(random_hermitian(uniform_int(2, 16))).eigenvectors;
    CHECK(std::abs(std::abs(determinant(u)) - 1.0) <= 1e-10);
  }
  const auto b = fermi::trap_basis(1.0, 6);
  for (double t : {0.3, 1.7, 5.0}) {
    CHECK(std::abs(std::abs(determinant(fermi::overlap_matrix(b, 6, t))) - 1.0) <= 1e-10);
  }
}

TEST_CASE("eigenvalue sum equals the trace") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hermitian(uniform_int(1, 30));
    const auto e = eigh(h);
    double trace = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) trace += h(i, i).real();
    const double sum = std::accumulate(e.eigenvalues.begin(), e.eigenvalues.end(), 0.0);
    CHECK(std::abs(trace - sum) <= 1e-10 * h.norm());
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST_CASE("kernels are bit-deterministic") {
  const auto h = random_hermitian(12);
  const auto a = eigh(h), b = eigh(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  const auto q = random_trap(20, 32);
  const auto s1 = fermi::survival_series_det(q), s2 = fermi::survival_series_det(q);
  CHECK(s1.chi == s2.chi);
}

TEST_CASE("trap survival amplitudes stay in the unit disc and start at one") {
  for (int trial = 0; trial < 8; ++trial) {
    const auto q = random_trap(30, 64);
    const auto s = fermi::survival_series_det(q);
    CHECK(std::abs(s.chi[0] - Complex(1.0)) <= 1e-8);
    for (const auto& c : s.chi) CHECK(std::abs(c) <= 1.0 + 1e-10);
  }
}

TEST_CASE("trap overlaps are complete and parity-selected") {
  for (int trial = 0; trial < 5; ++trial) {
    const double eta = uniform(0.5, 4.0);
    const int n = uniform_int(1, 40);
    const auto b = fermi::trap_basis(eta, n);
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      for (int m = 0; m < b.cutoff(); ++m) {
        sum += std::norm(b.coeffs(k, m));
        if ((k + m) % 2) CHECK(b.coeffs(k, m) == Complex(0.0));
      }
      CHECK(std::abs(sum - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("determinant series matches the closed form for small N") {
  for (double eta : {1.2, 1.5, 2.0}) {
    const int n = uniform_int(1, 8);
    fermi::TrapQuench q;
    q.eta = eta;
    q.n_particles = n;
    q.times = uniform_grid(kPi / eta, 97);
    const auto s = fermi::survival_series_det(q);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(std::abs(s.fidelity[i] - fermi::fidelity_dynamic_analytic(eta, n, s.times[i]).value) <= 1e-6);
    }
  }
}

TEST_CASE("both bounds hold on random fermion trajectories") {
  for (int trial = 0; trial < 6; ++trial) {
    const auto q = random_trap(40, 96);
    const auto s = fermi::survival_series_det(q);
    const auto basis = fermi::trap_basis(q.eta, q.n_particles);
    const auto c = qsl::check_bounds(s, fermi::many_body_variance(q),
                                     fermi::spectral_mean_work(basis, q.n_particles));
    CHECK(c.ok());
  }
  for (int trial = 0; trial < 3; ++trial) {
    fermi::ImpurityQuench q;
    q.kappa = uniform(0.1, 1.0);
    q.n_particles = uniform_int(2, 30);
    q.times = uniform_grid(kPi, 96);
    const auto s = fermi::survival_series_det(q);
    const auto basis = fermi::delta_basis(q.kappa, q.n_particles, fermi::default_impurity_cutoff(q.n_particles));
    const auto c = qsl::check_bounds(s, fermi::many_body_variance(q),
                                     fermi::spectral_mean_work(basis, q.n_particles));
    CHECK(c.ok());
  }
}

TEST_CASE("MT bound, norm and weights on random LMG points") {
  for (int trial = 0; trial < 6; ++trial) {
    lmg::LMGSpec s;
    s.lambda = uniform(0.05, 2.5);
    s.n_spins = uniform_int(2, 300);
    s.times = lmg::default_scan_grid(s, 128);
    const auto spectrum = lmg::quench_spectrum(s);
    const double total = std::accumulate(spectrum.weights.begin(), spectrum.weights.end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-10);
    const auto series = spectrum.evaluate(s.times);
    const double dh = lmg::variance_check(s.lambda, s.n_spins, s.gamma()).brute_force;
    if (dh > 0.0) CHECK(qsl::check_bounds(series, dh, 0.0).mt_violations == 0);

    const auto eig = eigh(lmg::build_hamiltonian(s, true));
    const auto psi = lmg::initial_state(s);
    CHECK(std::abs(lmg::evolve(eig, psi, uniform(0.0, 50.0)).norm() - 1.0) <= 1e-10);
    CHECK(lmg::conserved_charge_defect(lmg::build_hamiltonian(s, true), s.n_spins) <= 1e-12);
  }
}

TEST_CASE("aligned-phase spread does not depend on N") {
  for (int trial = 0; trial < 4; ++trial) {
    const double lambda = uniform(0.05, 0.95);
    for (int n : {10, 73, 400}) {
      const auto v = lmg::variance_check(lambda, n, lambda * std::sqrt(double(n)));
      CHECK(v.closed_form == doctest::Approx(2.0 * lambda).epsilon(1e-14));
      CHECK(std::abs(v.brute_force - 2.0 * lambda) <= 1e-10);
    }
  }
}

TEST_CASE("t_min decreases in N for random eta") {
  for (int trial = 0; trial < 4; ++trial) {
    const double eta = uniform(1.2, 3.0);
    double previous = INFINITY;
    for (int n = 20; n <= 200; n += 30) {
      const double t = fermi::t_min(eta, n, 1e-2).internal;
      CHECK(t < previous);
      previous = t;
    }
  }
}

TEST_CASE("parseval on random series") {
  for (int trial = 0; trial < 5; ++trial) {
    SurvivalSeries s;
    const std::size_t count = uniform_int(2, 300);
    s.push(0.0, 0.0, 1.0);
    for (double t : uniform_grid(uniform(1.0, 20.0), count)) {
      if (t > 0.0) s.push(t, uniform(-3.0, 0.0), std::polar(1.0, uniform(-kPi, kPi)));
    }
    const auto f = spectral::spectral_function(s);
    double lhs = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) lhs += (n == 0 ? 1.0 : 2.0) * std::norm(s.chi[n]);
    lhs *= f.dt;
    double rhs = 0.0;
    for (double v : f.values) rhs += v * v;
    rhs *= (f.omegas[1] - f.omegas[0]) / (2.0 * kPi);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);
  }
}

TEST_CASE("bures angle stays in range and tau bounds are nonnegative") {
  for (int trial = 0; trial < 100; ++trial) {
    const Complex chi = std::polar(uniform(0.0, 1.0), uniform(-kPi, kPi));
    const double a = qsl::bures_angle(chi);
    CHECK(a >= 0.0);
    CHECK(a <= kPi / 2);
    CHECK(qsl::tau_qsl(chi, uniform(0.01, 10.0)) >= 0.0);
    CHECK(qsl::tau_work(chi, uniform(0.01, 10.0)) >= 0.0);
    CHECK(qsl::tau_ml(chi, uniform(0.01, 10.0)) >= 0.0);
  }
}
