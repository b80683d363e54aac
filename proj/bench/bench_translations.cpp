#include <benchmark/benchmark.h>

#include "fmmbound/experiments.hpp"
#include "fmmbound/expansions.hpp"
#include "fmmbound/translations.hpp"

namespace {

using namespace fmmbound;

Expansion local_source(int p) { return s2l(Vec3{3.0, 1.0, -2.0}, 1.0, Vec3{}, p, 1.0); }
Expansion multipole_source(int p) { return s2m(Vec3{0.3, -0.2, 0.4}, 1.0, Vec3{}, p, 0.6); }

void BM_l2l_parallel(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Expansion e = local_source(p);
  for (auto _ : state) benchmark::DoNotOptimize(l2l(e, Vec3{0.2, 0.1, 0.3}, p));
}

void BM_l2l_serial(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Expansion e = local_source(p);
  for (auto _ : state) benchmark::DoNotOptimize(serial::l2l(e, Vec3{0.2, 0.1, 0.3}, p));
}

void BM_m2l_parallel(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Expansion e = multipole_source(p);
  for (auto _ : state) benchmark::DoNotOptimize(m2l(e, Vec3{2.0, 1.0, 1.5}, p));
}

void BM_m2l_serial(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Expansion e = multipole_source(p);
  for (auto _ : state) benchmark::DoNotOptimize(serial::m2l(e, Vec3{2.0, 1.0, 1.5}, p));
}

void BM_estimate_parallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_constant(Chain::m2l2l, {3, 5, 10}, 10, 1));
}

void BM_estimate_serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::estimate_constant(Chain::m2l2l, {3, 5, 10}, 10, 1));
}

}  // namespace

BENCHMARK(BM_l2l_parallel)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(BM_l2l_serial)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(BM_m2l_parallel)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(BM_m2l_serial)->Arg(10)->Arg(20)->Arg(30);
BENCHMARK(BM_estimate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_estimate_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
