#include <doctest.h>

#include <cmath>
#include <random>

#include "ocqsl/error.hpp"
#include "ocqsl/numerics/fit.hpp"
#include "ocqsl/numerics/linalg.hpp"

using namespace ocqsl;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const auto m = random_matrix(n, seed);
  return 0.5 * (m + m.adjoint());
}

Complex cofactor(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Complex det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0, k = 0; j < n; ++j) {
        if (j != c) minor(i - 1, k++) = m(i, j);
      }
    }
    det += (c % 2 ? -1.0 : 1.0) * m(0, c) * cofactor(minor);
  }
  return det;
}

}  // namespace

TEST_CASE("ComplexMatrix construction") {
  ComplexMatrix m(2, 3);
  CHECK(m.size() == 6);
  CHECK(m(1, 2) == Complex(0.0));
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), NonFiniteError);
  const ComplexMatrix h{{1.0, Complex(0.0, 2.0)}, {Complex(0.0, -2.0), 3.0}};
  CHECK(h.hermiticity_defect() == 0.0);
}

TEST_CASE("determinant of 1x1 is the entry") {
  const ComplexMatrix m{{Complex(0.3, -1.7)}};
  CHECK(determinant(m) == Complex(0.3, -1.7));
}

TEST_CASE("determinant of the identity") {
  const auto d = determinant(ComplexMatrix::identity(5));
  CHECK(d.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.imag() == 0.0);
}

TEST_CASE("determinant matches cofactor expansion up to 4x4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto m = random_matrix(n, 100 + n);
    const Complex ref = cofactor(m);
    CHECK(std::abs(determinant(m) - ref) <= 1e-12 * std::abs(ref));
  }
}

TEST_CASE("determinant of 6x6 with known triangular factors") {
  auto l = random_matrix(6, 1), u = random_matrix(6, 2);
  Complex expected = 1.0;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (j > i) l(i, j) = 0.0;
      if (j < i) u(i, j) = 0.0;
    }
    l(i, i) = 1.0;
    expected *= u(i, i);
  }
  CHECK(std::abs(determinant(l * u) - expected) <= 1e-12 * std::abs(expected));
}

TEST_CASE("log_determinant survives values below the double range") {
  std::vector<double> diag(400, 1e-3);
  const auto d = log_determinant(ComplexMatrix::diagonal(diag));
  CHECK(d.log_abs == doctest::Approx(400 * std::log(1e-3)));
  CHECK(d.value() == Complex(0.0));
}

TEST_CASE("determinant rejects bad input") {
  CHECK_THROWS_AS(determinant(ComplexMatrix(2, 3)), DomainError);
  CHECK(log_determinant(ComplexMatrix(3, 3)).log_abs == -INFINITY);
}

TEST_CASE("eigh of a diagonal matrix sorts ascending") {
  const std::vector<double> d{3.0, 1.0, 2.0};
  const auto e = eigh(ComplexMatrix::diagonal(d));
  CHECK(e.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("eigh of Pauli x") {
  const ComplexMatrix x{{0.0, 1.0}, {1.0, 0.0}};
  const auto e = eigh(x);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eigh of a random 8x8 Hermitian matrix") {
  const auto h = random_hermitian(8, 42);
  const auto e = eigh(h);
  CHECK(eigen_residual(h, e) <= 1e-9);
  CHECK(orthonormality_defect(e.eigenvectors) <= 1e-10);
  double trace = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) trace += h(i, i).real();
  for (double v : e.eigenvalues) sum += v;
  CHECK(std::abs(trace - sum) <= 1e-10 * h.norm());
}

TEST_CASE("eigh on real tridiagonal input") {
  ComplexMatrix t(50, 50);
  for (std::size_t i = 0; i < 50; ++i) {
    t(i, i) = std::sin(1.0 + i);
    if (i + 1 < 50) t(i, i + 1) = t(i + 1, i) = 0.3 + 0.01 * i;
  }
  const auto e = eigh(t);
  CHECK(eigen_residual(t, e) <= 1e-9);
  CHECK(orthonormality_defect(e.eigenvectors) <= 1e-10);
}

TEST_CASE("eigh rejects non-Hermitian and empty input") {
  const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(eigh(m), DomainError);
  CHECK_THROWS_AS(eigh(ComplexMatrix()), DomainError);
}

TEST_CASE("eigh symmetrizes roundoff-level asymmetry") {
  ComplexMatrix m{{1.0, 2.0}, {2.0 + 1e-12, 5.0}};
  const auto e = eigh(m);
  CHECK(eigen_residual(0.5 * (m + m.adjoint()), e) <= 1e-12);
}

TEST_CASE("linear_fit on an exact line") {
  const std::vector<double> xs{0, 1, 2, 3}, ys{1, 3, 5, 7};
  const auto f = linear_fit(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("linear_fit on constant data") {
  const std::vector<double> xs{0, 1, 2}, ys{4, 4, 4};
  const auto f = linear_fit(xs, ys);
  CHECK(f.slope == 0.0);
  CHECK(f.r_squared == 1.0);
}

TEST_CASE("linear_fit slope within the propagated noise bound") {
  std::mt19937_64 rng(5);
  const double sigma = 0.1;
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> xs, ys;
  for (int i = 0; i < 200; ++i) {
    xs.push_back(0.05 * i);
    ys.push_back(-1.5 * xs.back() + 0.7 + noise(rng));
  }
  double mean = 0.0, sxx = 0.0;
  for (double x : xs) mean += x / xs.size();
  for (double x : xs) sxx += (x - mean) * (x - mean);
  const auto f = linear_fit(xs, ys);
  CHECK(std::abs(f.slope + 1.5) <= 3.0 * sigma / std::sqrt(sxx));
  CHECK(f.r_squared >= 0.0);
  CHECK(f.r_squared <= 1.0);
}

TEST_CASE("linear_fit errors") {
  const std::vector<double> a{1, 1, 1}, b{1, 2, 3}, c{1, 2};
  CHECK_THROWS_AS(linear_fit(a, b), DomainError);
  CHECK_THROWS_AS(linear_fit(b, c), DomainError);
}
