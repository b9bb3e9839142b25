// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "muntz/assembly.hpp"
#include "muntz/solver.hpp"

using namespace muntz;

namespace {

ProblemConfig fractional_case() {
  ProblemConfig cfg;
  cfg.kind = ProblemKind::fractional;
  cfg.d = 3;
  cfg.eta = 3;
  cfg.nu = 5;
  cfg.c = 0.1;
  cfg.z = 1.0;
  return cfg;
}

void BM_RadialGram(benchmark::State& state, Execution exec) {
  const MbpSpec spec = fractional_case().basis_spec();
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(radial_gram(spec, 2, K, 5, 6, exec));
  state.SetComplexityN(K);
}

void BM_Spectrum(benchmark::State& state, Execution exec) {
  const SpectrumRequest req{fractional_case(), static_cast<int>(state.range(0)), 40, 5};
  for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(req, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_RadialGram, serial, Execution::serial)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK_CAPTURE(BM_RadialGram, parallel, Execution::parallel)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK_CAPTURE(BM_Spectrum, serial, Execution::serial)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(BM_Spectrum, parallel, Execution::parallel)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
