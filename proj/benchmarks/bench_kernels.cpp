#include <benchmark/benchmark.h>

#include <cmath>

#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/presets.hpp"
#include "torus_cauchy/spectral_field.hpp"
#include "torus_cauchy/symbol.hpp"

using namespace torus;

namespace {

// Single coefficient with a time-dependent forcing, so the adaptive rule runs.
void BM_DuhamelCoefficient(benchmark::State& state) {
  const auto spec = presets::intro_example(4, 0);
  const Frequency xi{static_cast<int>(state.range(0))};
  const Forcing f = [](double s) { return LogComplex::from_complex(std::polar(1.0, s)); };
  const LogComplex g = LogComplex::from_complex({1.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(duhamel_coefficient(spec, g, f, 0.75, xi));
  }
}
BENCHMARK(BM_DuhamelCoefficient)->RangeMultiplier(8)->Range(1, 4096);

void BM_SolveCauchy2d(benchmark::State& state) {
  const auto spec = presets::heat(2);
  DataSpec data;
  data.initial = Generator::gevrey(1.0, 2.0);
  data.forcing = Generator::exponential(1.0);
  const int truncation = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cauchy(spec, data, {0.5, 1.0}, truncation));
  }
  state.SetItemsProcessed(state.iterations() * 2 * (2 * truncation + 1) * (2 * truncation + 1));
}
BENCHMARK(BM_SolveCauchy2d)->Arg(4)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ClassifyIntroTable(benchmark::State& state) {
  for (auto _ : state) {
    for (int k = 0; k <= 5; ++k) {
      for (int l = 0; l <= 2; ++l) benchmark::DoNotOptimize(classify(derive_structure(presets::intro_example(k, l))));
    }
  }
}
BENCHMARK(BM_ClassifyIntroTable)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
