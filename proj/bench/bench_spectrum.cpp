#include <benchmark/benchmark.h>

#include <cmath>

#include "rsl/spectrum.hpp"

namespace {

rsl::ValidatedProblem smooth() {
  rsl::ProblemSpec s;
  s.a1 = 0.5;
  s.d = 0.3;
  s.q = rsl::PiecewiseFn::uniform([](double x) { return std::cos(x); });
  s.delay = rsl::PiecewiseFn([](double x) { return 0.1 * x; },
                             [](double x) { return 0.05 * (x - rsl::kInterface); });
  return rsl::require_valid(s);
}

void BM_SpectrumSerial(benchmark::State& state) {
  const auto p = smooth();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::compute_spectrum_serial(p, static_cast<int>(state.range(0))));
  }
}

void BM_SpectrumParallel(benchmark::State& state) {
  const auto p = smooth();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rsl::compute_spectrum(p, static_cast<int>(state.range(0))));
  }
}

void BM_Theta(benchmark::State& state) {
  rsl::ThetaEvaluator f(smooth());
  const double lambda = static_cast<double>(state.range(0)) + 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(f.at_lambda(lambda));
}

}  // namespace

BENCHMARK(BM_SpectrumSerial)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SpectrumParallel)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Theta)->Arg(10)->Arg(150)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
