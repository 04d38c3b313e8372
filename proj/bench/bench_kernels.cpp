// Serial reference vs OpenMP kernels: subset enumeration and per-radius
// Betti computation. Both paths must produce identical output; the benchmark
// only times them.

#include <benchmark/benchmark.h>

#include "dmorse/morse.hpp"
#include "dmorse/offsets.hpp"
#include "support/oracles.hpp"

using namespace dmorse;

namespace {

PointCloud<Rational> bench_cloud(std::size_t n, std::size_t k) {
  oracle::Rng rng(1000 + 31 * n + k);
  return PointCloud<Rational>(oracle::random_cloud(rng, n, k, 40, 7));
}

Execution execution(const benchmark::State& state) { return state.range(2) ? Execution::Parallel : Execution::Serial; }

void BM_Enumerate(benchmark::State& state) {
  auto cloud = bench_cloud(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  EnumerationOptions opts;
  opts.execution = execution(state);
  std::size_t records = 0;
  for (auto _ : state) {
    auto recs = enumerate_critical(cloud, opts);
    records = recs.size();
    benchmark::DoNotOptimize(recs);
  }
  state.counters["records"] = static_cast<double>(records);
}

void BM_Verify(benchmark::State& state) {
  auto cloud = bench_cloud(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  auto recs = enumerate_critical(cloud);
  for (auto _ : state) {
    auto report = verify_morse_consistency(cloud, recs, execution(state));
    benchmark::DoNotOptimize(report);
  }
}

}  // namespace

// args: ambient dimension, cloud size, parallel (0/1)
BENCHMARK(BM_Enumerate)->ArgsProduct({{2}, {8, 12, 16}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->ArgsProduct({{3}, {8, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Verify)->ArgsProduct({{2}, {6, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Verify)->ArgsProduct({{3}, {6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
