#include "ocqsl/lmg/lmg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ocqsl/error.hpp"

namespace ocqsl::lmg {

namespace {

void check_spins(int n_spins) {
  if (n_spins < 2 || n_spins > kMaxSpins) {
    throw DomainError("lmg: N = " + std::to_string(n_spins) + " outside [2, " +
                      std::to_string(kMaxSpins) + "]");
  }
}

// sqrt(S(S+1) - m(m-1)) for the lowering S-|m> with m = q - S, written in q
// so that it stays exact in integers: (N - q + 1) q.
double lowering_element(int n_spins, int q) {
  return std::sqrt(static_cast<double>(n_spins - q + 1) * static_cast<double>(q));
}

double impurity_energy(int up, SignConvention sign) {
  // i (-2 s_z), s_z = +-1/2
  return up ? -static_cast<double>(sign.impurity) : static_cast<double>(sign.impurity);
}

int aligned_level(int n_spins, SignConvention sign) { return sign.bath > 0 ? n_spins : 0; }

std::vector<Complex> apply(const ComplexMatrix& h, const CollectiveState& psi) {
  if (h.rows() != psi.amplitudes.size()) throw DomainError("lmg: state/matrix size mismatch");
  return h.apply(psi.amplitudes);
}

}  // namespace

double LMGSpec::gamma() const {
  return gamma_override ? *gamma_override : lambda * std::sqrt(static_cast<double>(n_spins));
}

void LMGSpec::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lmg: lambda must be >= 0");
  check_spins(n_spins);
  if (!std::isfinite(gamma())) throw DomainError("lmg: gamma must be finite");
  validate_time_grid(times);
}

double CollectiveState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

CollectiveState CollectiveState::product(int n_spins, int q, int up) {
  check_spins(n_spins);
  if (q < 0 || q > n_spins) throw DomainError("lmg: bath level out of range");
  CollectiveState psi{n_spins, std::vector<Complex>(dimension(n_spins))};
  psi.amplitudes[state_index(q, up)] = 1.0;
  return psi;
}

double bath_energy(double lambda, int n_spins, int q, SignConvention sign) {
  const double n = n_spins;
  const double s = 0.5 * n;
  const double m = q - s;
  return -(lambda / n) * (2.0 * (s * (s + 1.0) - m * m) - n) - 2.0 * sign.bath * m;
}

ComplexMatrix build_hamiltonian(const LMGSpec& spec, bool interaction_on, SignConvention sign) {
  spec.validate();
  const int n = spec.n_spins;
  ComplexMatrix h(dimension(n), dimension(n));
  for (int q = 0; q <= n; ++q) {
    const double eb = bath_energy(spec.lambda, n, q, sign);
    h(state_index(q, 0), state_index(q, 0)) = eb + impurity_energy(0, sign);
    h(state_index(q, 1), state_index(q, 1)) = eb + impurity_energy(1, sign);
  }
  if (interaction_on) {
    // -2 (gamma/N) s+ S-: (q, down) -> (q - 1, up), and its adjoint.
    const double c = -2.0 * spec.gamma() / n;
    for (int q = 1; q <= n; ++q) {
      const double v = c * lowering_element(n, q);
      h(state_index(q - 1, 1), state_index(q, 0)) = v;
      h(state_index(q, 0), state_index(q - 1, 1)) = v;
    }
  }
  return h;
}

LMGGroundInfo ground_info(double lambda, int n_spins, SignConvention sign) {
  check_spins(n_spins);
  const int aligned = aligned_level(n_spins, sign);
  int best = aligned;
  double best_e = bath_energy(lambda, n_spins, aligned, sign);
  // Walk away from the aligned level so ties keep the smaller j.
  const int step = aligned == 0 ? 1 : -1;
  for (int q = aligned + step; q >= 0 && q <= n_spins; q += step) {
    const double e = bath_energy(lambda, n_spins, q, sign);
    if (e < best_e) {
      best_e = e;
      best = q;
    }
  }
  return {best - 0.5 * n_spins, std::abs(best - aligned), best_e};
}

CollectiveState initial_state(const LMGSpec& spec, SignConvention sign) {
  spec.validate();
  const auto info = ground_info(spec.lambda, spec.n_spins, sign);
  const int q = static_cast<int>(std::lround(info.m_ground + 0.5 * spec.n_spins));
  const int up = impurity_energy(1, sign) < impurity_energy(0, sign) ? 1 : 0;
  return CollectiveState::product(spec.n_spins, q, up);
}

double conserved_charge_defect(const ComplexMatrix& h, int n_spins) {
  if (h.rows() != dimension(n_spins) || !h.is_square()) {
    throw DomainError("conserved_charge_defect: matrix size mismatch");
  }
  // S_z + s_z = q + s - (N + 1) / 2.
  auto charge = [](std::size_t idx) { return idx / 2 + idx % 2; };
  double worst = 0.0;
  for (std::size_t a = 0; a < h.rows(); ++a) {
    for (std::size_t b = 0; b < h.cols(); ++b) {
      if (charge(a) != charge(b)) worst = std::max(worst, std::abs(h(a, b)));
    }
  }
  return worst;
}

double expectation(const ComplexMatrix& h, const CollectiveState& psi) {
  const auto hpsi = apply(h, psi);
  Complex s = 0.0;
  for (std::size_t a = 0; a < hpsi.size(); ++a) s += std::conj(psi.amplitudes[a]) * hpsi[a];
  return s.real();
}

double variance(const ComplexMatrix& h, const CollectiveState& psi) {
  const auto hpsi = apply(h, psi);
  Complex mean = 0.0;
  double second = 0.0;
  for (std::size_t a = 0; a < hpsi.size(); ++a) {
    mean += std::conj(psi.amplitudes[a]) * hpsi[a];
    second += std::norm(hpsi[a]);
  }
  return std::max(0.0, second - mean.real() * mean.real());
}

CollectiveState evolve(const EigenDecomposition& eig, const CollectiveState& psi, double t) {
  const auto& v = eig.eigenvectors;
  const std::size_t d = v.rows();
  if (psi.amplitudes.size() != d) throw DomainError("lmg: state/eigenbasis size mismatch");
  std::vector<Complex> c(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    if (psi.amplitudes[a] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) c[j] += std::conj(v(a, j)) * psi.amplitudes[a];
  }
  for (std::size_t j = 0; j < d; ++j) c[j] *= std::polar(1.0, -eig.eigenvalues[j] * t);
  CollectiveState out{psi.n_spins, std::vector<Complex>(d, 0.0)};
  for (std::size_t a = 0; a < d; ++a) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += v(a, j) * c[j];
    out.amplitudes[a] = s;
  }
  return out;
}

QuenchSpectrum quench_spectrum(const LMGSpec& spec, const Tolerances& tol) {
  const auto psi = initial_state(spec);
  const auto h_i = build_hamiltonian(spec, false);
  const auto h_f = build_hamiltonian(spec, true);
  const auto eig = eigh(h_f, tol);
  const std::size_t d = h_f.rows();

  QuenchSpectrum out;
  out.energies = eig.eigenvalues;
  out.weights.assign(d, 0.0);
  out.initial_energy = expectation(h_i, psi);
  for (std::size_t j = 0; j < d; ++j) {
    Complex overlap = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      if (psi.amplitudes[a] != 0.0) overlap += std::conj(eig.eigenvectors(a, j)) * psi.amplitudes[a];
    }
    out.weights[j] = std::norm(overlap);
  }
  return out;
}

SurvivalSeries quench_chi(const LMGSpec& spec, const Tolerances& tol) {
  return quench_spectrum(spec, tol).evaluate(spec.times);
}

double variance_closed_form(int j, int n_spins, double gamma) {
  check_spins(n_spins);
  if (j < 0 || j > n_spins) throw DomainError("variance_closed_form: j outside [0, N]");
  const double n = n_spins;
  return std::sqrt(4.0 * (1.0 + j) * (n - j) * gamma * gamma / (n * n));
}

VarianceCheck variance_check(double lambda, int n_spins, double gamma) {
  LMGSpec spec{lambda, n_spins, gamma, {0.0}};
  const auto info = ground_info(lambda, n_spins);
  VarianceCheck out;
  out.j = info.j_crossings;
  out.closed_form = variance_closed_form(out.j, n_spins, gamma);
  out.brute_force = std::sqrt(variance(build_hamiltonian(spec, true), initial_state(spec)));
  return out;
}

std::vector<double> default_scan_grid(const LMGSpec& spec, std::size_t count) {
  const auto info = ground_info(spec.lambda, spec.n_spins);
  const double dh = variance_closed_form(info.j_crossings, spec.n_spins, spec.gamma());
  const double extent = dh > 0.0 ? 2.0 * std::numbers::pi / dh : 2.0 * std::numbers::pi;
  return uniform_grid(extent, count);
}

namespace {

struct Dip {
  double t = 0.0;
  double f = 1.0;
  std::string warning;
};

// Parabola through samples k-1, k, k+1, re-evaluated exactly at the vertex.
Dip refine_dip(const QuenchSpectrum& spectrum, const SurvivalSeries& series, std::size_t k) {
  Dip d{series.times[k], series.fidelity[k], {}};
  if (k == 0 || k + 1 == series.size()) return d;
  const double t0 = series.times[k - 1], t1 = series.times[k], t2 = series.times[k + 1];
  const double f0 = series.fidelity[k - 1], f1 = series.fidelity[k], f2 = series.fidelity[k + 1];
  const double denom = (t0 - t1) * (t0 - t2) * (t1 - t2);
  const double a = (t2 * (f1 - f0) + t1 * (f0 - f2) + t0 * (f2 - f1)) / denom;
  const double b = (t2 * t2 * (f0 - f1) + t1 * t1 * (f2 - f0) + t0 * t0 * (f1 - f2)) / denom;
  if (!(a > 0.0)) return d;
  const double vertex = -b / (2.0 * a);
  const double step = std::max(t1 - t0, t2 - t1);
  if (std::abs(vertex - t1) > step) {
    d.warning = "fmin_scan: grid too coarse, refinement moved t_min by " +
                std::to_string((vertex - t1) / step) + " grid steps";
    return d;
  }
  const double f_vertex = std::norm(spectrum.chi(vertex));
  if (f_vertex < d.f) {
    d.f = f_vertex;
    d.t = vertex;
  }
  return d;
}

// Dips within this relative distance of the lowest one count as the same
// recurring minimum.
constexpr double kRecurrenceTolerance = 1e-3;

}  // namespace

FminResult fmin_scan(const LMGSpec& spec, const Tolerances& tol) {
  LMGSpec scan = spec;
  if (scan.times.size() < 3) scan.times = default_scan_grid(spec);
  const auto spectrum = quench_spectrum(scan, tol);
  const auto series = spectrum.evaluate(scan.times);
  const auto& f = series.fidelity;
  const std::size_t n = f.size();

  std::vector<Dip> dips;
  for (std::size_t k = 1; k < n; ++k) {
    const bool left = f[k] < f[k - 1];
    const bool right = k + 1 == n || f[k] <= f[k + 1];
    if (left && right) dips.push_back(refine_dip(spectrum, series, k));
  }

  FminResult out;
  out.grid_step = scan.times[1] - scan.times[0];
  if (dips.empty()) {
    out.f_min = f[0];
    out.t_min = series.times[0];
    return out;
  }
  double lowest = dips.front().f;
  for (const auto& d : dips) lowest = std::min(lowest, d.f);
  // F recurs, so the earliest dip reaching the global minimum is reported.
  const double cut = lowest + std::max(1e-12, kRecurrenceTolerance * lowest);
  const auto& pick = *std::find_if(dips.begin(), dips.end(), [&](const Dip& d) { return d.f <= cut; });
  out.f_min = pick.f;
  out.t_min = pick.t;
  if (!pick.warning.empty()) out.warnings.push_back(pick.warning);
  if (pick.t == series.times.back()) out.warnings.push_back("fmin_scan: minimum on the last grid point");
  return out;
}

std::vector<double> crossing_points(int n_spins, double lo, double hi) {
  check_spins(n_spins);
  std::vector<double> out;
  for (int j = 0; n_spins - 2 * j - 1 > 0; ++j) {
    const double l = static_cast<double>(n_spins) / (n_spins - 2 * j - 1);
    if (l > lo && l <= hi) out.push_back(l);
  }
  return out;
}

SpectrumSweep spectrum_sweep(int n_spins, const std::vector<double>& lambda_grid) {
  check_spins(n_spins);
  if (lambda_grid.empty()) throw DomainError("spectrum_sweep: empty lambda grid");
  SpectrumSweep out;
  out.n_spins = n_spins;
  out.lambdas = lambda_grid;
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0)) throw DomainError("spectrum_sweep: lambda must be >= 0");
    std::vector<double> levels(static_cast<std::size_t>(n_spins) + 1);
    for (int q = 0; q <= n_spins; ++q) levels[static_cast<std::size_t>(q)] = bath_energy(lambda, n_spins, q);
    std::sort(levels.begin(), levels.end());
    out.levels.push_back(std::move(levels));
    out.ground_m.push_back(ground_info(lambda, n_spins).m_ground);
  }
  const auto [lo, hi] = std::minmax_element(lambda_grid.begin(), lambda_grid.end());
  out.crossings = crossing_points(n_spins, *lo, *hi);
  return out;
}

SignConvention calibrate_sign_convention() {
  constexpr int kSpins = 10;
  std::vector<SignConvention> passing;
  for (int b : {-1, 1}) {
    for (int i : {-1, 1}) {
      const SignConvention sign{b, i};
      if (ground_info(0.5, kSpins, sign).m_ground != -0.5 * kSpins) continue;
      bool ok = true;
      for (double lambda : {0.5, 1.6}) {
        const LMGSpec spec{lambda, kSpins, std::nullopt, {0.0}};
        const auto info = ground_info(lambda, kSpins, sign);
        const double closed = variance_closed_form(info.j_crossings, kSpins, spec.gamma());
        const double brute =
            std::sqrt(variance(build_hamiltonian(spec, true, sign), initial_state(spec, sign)));
        if (std::abs(closed - brute) > 1e-8 * closed) ok = false;
      }
      if (ok) passing.push_back(sign);
    }
  }
  if (passing.size() != 1) {
    throw Error("calibrate_sign_convention: " + std::to_string(passing.size()) +
                " conventions satisfy the ground-level and variance conditions");
  }
  return passing.front();
}

}  // namespace ocqsl::lmg
