// Serial reference against the OpenMP sweeps on the same grids.
#include <benchmark/benchmark.h>

#include "hilltongue/sweeps.hpp"
#include "hilltongue/tongues.hpp"

using namespace hilltongue;

namespace {

const Polynomial f{{0, 0, 1, 1.0 / 18}};
const Polynomial g{{0, 2.0 / 3, 1.0 / 18}};
const std::vector<unsigned> Ns = {1, 2, 3, 4};
const std::vector<double> qs = {0.02, 0.04, 0.08, 0.15};

std::vector<double> betas() {
  std::vector<double> b;
  for (int i = 0; i < 64; ++i) b.push_back(-0.5 + 0.25 * i);
  return b;
}

void BM_TongueGridSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tongue_grid_serial(f, g, Ns, qs));
}

void BM_TongueGridParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tongue_grid_parallel(f, g, Ns, qs, {}, threads));
}

void BM_ChartSerial(benchmark::State& state) {
  const auto b = betas();
  for (auto _ : state) benchmark::DoNotOptimize(stability_chart_serial(f, g, qs, b));
}

void BM_ChartParallel(benchmark::State& state) {
  const auto b = betas();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stability_chart_parallel(f, g, qs, b, {}, threads));
}

void BM_SeriesTables(benchmark::State& state) {
  const auto spec = example4_spec(1, 2, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_series(spec, 6));
}

}  // namespace

BENCHMARK(BM_TongueGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TongueGridParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChartSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChartParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesTables)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
