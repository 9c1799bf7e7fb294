#include <benchmark/benchmark.h>

#include <random>

#include "pfx/finite_pf.hpp"
#include "pfx/series_engine.hpp"

namespace {

void BM_TermCdi(benchmark::State& state) {
  long k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfx::terms::cdi_gamma(0.5, 0.7, 0.4, 2.3, k));
    k = (k + 1) % 2000;
  }
}
BENCHMARK(BM_TermCdi);

void BM_TermTvd(benchmark::State& state) {
  const std::array<pfx::Complex, 3> x{0.2, 0.3, 0.4};
  const pfx::Complex lambda = 1.5;
  const pfx::Complex shift = (x[0] - lambda) * (x[1] - lambda) * (x[2] - lambda);
  long k = 0;
  for (auto _ : state) {
    const double kk = static_cast<double>(k);
    const pfx::RootPair eta = pfx::eta_pm(0.9 + kk, lambda, shift, lambda + kk);
    benchmark::DoNotOptimize(pfx::terms::tvd(eta, x, 3.5, lambda, k));
    k = (k + 1) % 2000;
  }
}
BENCHMARK(BM_TermTvd);

void BM_TermPiSquared(benchmark::State& state) {
  long k = 0;
  for (auto _ : state) {
    const double kk = static_cast<double>(k);
    benchmark::DoNotOptimize(pfx::terms::pi_squared(0.5 - kk, -0.5 * kk, 0.5, k));
    k = (k + 1) % 2000;
  }
}
BENCHMARK(BM_TermPiSquared);

void BM_BetaSymPi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pfx::beta_sym(0.5, 0.5, 0.0, 5.0).value);
}
BENCHMARK(BM_BetaSymPi);

void BM_ClosedAsym(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pfx::closed_asym(0.25, 0.25, 1.0, 1.0, 0.0, 3.0).value);
}
BENCHMARK(BM_ClosedAsym);

void BM_FiniteIdentity(benchmark::State& state) {
  const auto kind = static_cast<pfx::FiniteKind>(state.range(0));
  std::mt19937_64 rng(1);
  const auto in = pfx::sample_instance(kind, 6, rng);
  state.SetLabel(pfx::to_string(kind));
  for (auto _ : state) benchmark::DoNotOptimize(pfx::evaluate(in).rel_err);
}
BENCHMARK(BM_FiniteIdentity)->DenseRange(0, 5);

}  // namespace

BENCHMARK_MAIN();
