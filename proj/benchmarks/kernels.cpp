#include <benchmark/benchmark.h>

#include <random>

#include "ocqsl/fermi/fermi.hpp"
#include "ocqsl/lmg/lmg.hpp"
#include "ocqsl/numerics/linalg.hpp"
#include "ocqsl/spectral/spectral.hpp"

namespace {

using namespace ocqsl;

ComplexMatrix random_matrix(std::size_t n, bool hermitian) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  if (!hermitian) return m;
  return 0.5 * (m + m.adjoint());
}

void BM_LogDeterminant(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(log_determinant(m));
}
BENCHMARK(BM_LogDeterminant)->Arg(10)->Arg(50)->Arg(100)->Arg(200);

void BM_EighDense(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(m));
}
BENCHMARK(BM_EighDense)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EighLmg(benchmark::State& state) {
  const lmg::LMGSpec spec{1.1, static_cast<int>(state.range(0)), std::nullopt, {0.0}};
  const auto h = lmg::build_hamiltonian(spec, true);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_EighLmg)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OverlapMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = fermi::trap_basis(1.5, n);
  for (auto _ : state) benchmark::DoNotOptimize(fermi::overlap_matrix(basis, n, 0.7));
}
BENCHMARK(BM_OverlapMatrix)->Arg(10)->Arg(50)->Arg(100);

void BM_SurvivalPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = fermi::delta_basis(0.5, n, fermi::default_impurity_cutoff(n));
  for (auto _ : state) benchmark::DoNotOptimize(fermi::survival_series_det(basis, n, {0.0, 0.4}));
}
BENCHMARK(BM_SurvivalPoint)->Arg(20)->Arg(60)->Arg(100);

void BM_SpectralFunction(benchmark::State& state) {
  const QuenchSpectrum spectrum{{0.0, 1.0, 2.5}, {0.5, 0.3, 0.2}, 0.0};
  const auto series = spectrum.evaluate(uniform_grid(50.0, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::spectral_function(series, spectral::Window::hann));
}
BENCHMARK(BM_SpectralFunction)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
