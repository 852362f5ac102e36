#include "fanikit/amoeba.hpp"

#include <benchmark/benchmark.h>

using namespace fanikit;

namespace {

LaurentFamily line_family(double t) {
  LaurentFamily f;
  f.terms = {{1.0, {0, 0}, 0}, {1.0, {1, 0}, 0}, {1.0, {0, 1}, 0}};
  f.t = t;
  return f;
}

LaurentFamily plane_family(double t) {
  LaurentFamily f;
  f.terms = {{1.0, {0, 0, 0}, 0}, {1.0, {1, 0, 0}, 1}, {1.0, {0, 1, 0}, 1}, {1.0, {0, 0, 1}, 1}, {1.0, {-1, -1, -1}, 1}};
  f.t = t;
  return f;
}

void BM_curve_serial(benchmark::State& state) {
  const SliceGrid grid{static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_serial(line_family(1e4), grid));
}

void BM_curve_parallel(benchmark::State& state) {
  const SliceGrid grid{static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)), 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_parallel(line_family(1e4), grid));
}

void BM_surface_serial(benchmark::State& state) {
  const SliceGrid grid{static_cast<std::size_t>(state.range(0)), 8, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_serial(plane_family(1e2), grid));
}

void BM_surface_parallel(benchmark::State& state) {
  const SliceGrid grid{static_cast<std::size_t>(state.range(0)), 8, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_parallel(plane_family(1e2), grid));
}

}  // namespace

BENCHMARK(BM_curve_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curve_parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_surface_serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_surface_parallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
