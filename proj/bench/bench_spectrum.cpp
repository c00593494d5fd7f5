// Serial versus OpenMP assembly of the full spectrum, and the concurrent
// verification sweep. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cyclespec/spectrum.hpp"
#include "cyclespec/sweep.hpp"

using namespace cyclespec;

namespace {

void args(benchmark::internal::Benchmark* b) {
  for (long bits : {256L, 3322L}) {
    for (long n : {64L, 256L, 1024L}) b->Args({n, bits});
  }
}

void BM_FullSpectrumSerial(benchmark::State& state) {
  const SpectralProblem p(Rational(-1, 3), state.range(0));
  const PrecisionContext ctx(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum_serial(p, ctx, Method::kNewton));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FullSpectrumParallel(benchmark::State& state) {
  const SpectralProblem p(Rational(-1, 3), state.range(0));
  const PrecisionContext ctx(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum(p, ctx, Method::kNewton));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Sweep(benchmark::State& state) {
  SweepConfig config;
  config.alphas = {Rational(-1, 3), Rational(-1), Rational(-5, 2)};
  config.n_max = state.range(0);
  const PrecisionContext ctx(256);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(config, ctx));
}

}  // namespace

BENCHMARK(BM_FullSpectrumSerial)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FullSpectrumParallel)->Apply(args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sweep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
