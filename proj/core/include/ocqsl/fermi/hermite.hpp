#pragma once

#include <vector>

namespace ocqsl::fermi {

/// Orders above this are rejected.
inline constexpr int kMaxHermiteOrder = 1 << 14;

/// Normalized harmonic-oscillator eigenfunction psi_n(x) (unit mass and
/// frequency, hbar = 1).
///
/// Evaluated by the upward three-term recurrence on the normalized functions
/// themselves, carrying the Gaussian as a separate log-scale so that large
/// |x| neither underflows the seed nor overflows the polynomial part.
double hermite_function(int n, double x);

/// psi_0(x) .. psi_nmax(x) in one recurrence pass.
std::vector<double> hermite_functions(int nmax, double x);

/// psi_k(0) for k = 0 .. nmax; zero for odd k.
std::vector<double> hermite_functions_at_origin(int nmax);

/// n-point Gauss-Hermite rule for the weight exp(-y^2).
///
/// `scaled_weights[i] = weights[i] * exp(nodes[i]^2)` stays representable at
/// any order, so integrands that already carry their Gaussian factor are
/// summed as sum_i scaled_weights[i] * f(nodes[i]).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Exact for polynomials of degree <= 2n-1 times exp(-y^2).
GaussHermiteRule gauss_hermite(int n);

}  // namespace ocqsl::fermi
