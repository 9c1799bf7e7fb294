#include <benchmark/benchmark.h>

#include "pfx/gamma_product.hpp"
#include "pfx/scalar_kernel.hpp"
#include "pfx/sym_roots.hpp"

namespace {

void BM_GammaReal(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfx::gamma(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_GammaReal);

void BM_GammaComplex(benchmark::State& state) {
  pfx::Complex z{0.37, 1.3};
  for (auto _ : state) benchmark::DoNotOptimize(pfx::gamma(z));
}
BENCHMARK(BM_GammaComplex);

void BM_LogGammaReflected(benchmark::State& state) {
  pfx::Complex z{-7.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(pfx::log_gamma(z));
}
BENCHMARK(BM_LogGammaReflected);

void BM_Pochhammer(benchmark::State& state) {
  const long k = state.range(0);
  const pfx::Complex a{0.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(pfx::pochhammer(a, k));
}
BENCHMARK(BM_Pochhammer)->Arg(8)->Arg(64)->Arg(150);

void BM_PairedPochhammer(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pfx::paired_pochhammer(1.0, 5.0, k));
}
BENCHMARK(BM_PairedPochhammer)->Arg(8)->Arg(64)->Arg(90);

void BM_GammaProductRatio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pfx::GammaProduct().times_gamma_pair({0.3, 0.1}, {0.7, -0.2}).over_gamma(1.4).over_factorial(40).value());
  }
}
BENCHMARK(BM_GammaProductRatio);

void BM_RootsFromElementary(benchmark::State& state) {
  std::vector<pfx::Complex> xs;
  for (long j = 0; j < state.range(0); ++j) xs.emplace_back(0.3 + j, 0.1 * j);
  const pfx::ESymPoint e = pfx::elementary_from_roots(xs);
  for (auto _ : state) benchmark::DoNotOptimize(pfx::roots_from_elementary(e));
}
BENCHMARK(BM_RootsFromElementary)->DenseRange(2, 5);

}  // namespace
