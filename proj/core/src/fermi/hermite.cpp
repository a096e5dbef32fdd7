#include "ocqsl/fermi/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "ocqsl/error.hpp"

namespace ocqsl::fermi {

namespace {

constexpr double kRescaleAbove = 1e150;
const double kLogRescale = std::log(kRescaleAbove);

void check_order(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: negative order");
  if (n > kMaxHermiteOrder) {
    throw DomainError("hermite_function: order " + std::to_string(n) +
                      " beyond stability bound " + std::to_string(kMaxHermiteOrder));
  }
  if (!std::isfinite(x)) throw DomainError("hermite_function: non-finite argument");
}

struct RecurrenceState {
  double prev;  // psi_{n-1} mantissa
  double cur;   // psi_n mantissa
  double log_scale;
};

// Runs the normalized recurrence and hands (order, mantissa, log_scale) to
// `sink`; psi_k(x) = mantissa * exp(log_scale).
template <typename Sink>
RecurrenceState recur(int nmax, double x, Sink&& sink) {
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  sink(0, cur, log_scale);
  for (int k = 0; k < nmax; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      cur /= kRescaleAbove;
      prev /= kRescaleAbove;
      log_scale += kLogRescale;
    }
    sink(k + 1, cur, log_scale);
  }
  return {prev, cur, log_scale};
}

void no_sink(int, double, double) {}

}  // namespace

double hermite_function(int n, double x) {
  check_order(n, x);
  double out = 0.0;
  recur(n, x, [&](int k, double mantissa, double log_scale) {
    if (k == n) out = mantissa * std::exp(log_scale);
  });
  return out;
}

std::vector<double> hermite_functions(int nmax, double x) {
  check_order(nmax, x);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  double cached_scale = 0.0, factor = 1.0;
  bool have_factor = false;
  recur(nmax, x, [&](int k, double mantissa, double log_scale) {
    if (!have_factor || log_scale != cached_scale) {
      cached_scale = log_scale;
      factor = std::exp(log_scale);
      have_factor = true;
    }
    out[static_cast<std::size_t>(k)] = mantissa * factor;
  });
  return out;
}

std::vector<double> hermite_functions_at_origin(int nmax) {
  check_order(nmax, 0.0);
  // psi_{2j}(0) = (-1)^j pi^{-1/4} sqrt((2j-1)!! / (2j)!!)
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  double v = std::pow(std::numbers::pi, -0.25);
  for (int k = 0; k <= nmax; k += 2) {
    out[static_cast<std::size_t>(k)] = v;
    v *= -std::sqrt((k + 1.0) / (k + 2.0));
  }
  return out;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  check_order(n, 0.0);

  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) sub(k) = std::sqrt((k + 1) / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("gauss_hermite: Jacobi eigensolve failed");

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double y = solver.eigenvalues()(i);
    // Newton polish on psi_n, using psi_n' = sqrt(2n) psi_{n-1} - y psi_n.
    // Both mantissas share one scale, so the ratio is safe at any |y|.
    for (int iter = 0; iter < 3; ++iter) {
      const auto s = recur(n, y, no_sink);
      const double deriv = std::sqrt(2.0 * n) * s.prev - y * s.cur;
      if (deriv == 0.0) break;
      const double step = s.cur / deriv;
      y -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(y))) break;
    }
    const auto s = recur(n, y, no_sink);
    const double h_prev = s.prev * std::exp(s.log_scale);
    rule.nodes[i] = y;
    rule.scaled_weights[i] = 1.0 / (n * h_prev * h_prev);
    rule.weights[i] = rule.scaled_weights[i] * std::exp(-y * y);
  }
  return rule;
}

}  // namespace ocqsl::fermi
