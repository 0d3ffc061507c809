// Parallel batches against their serial twins.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gslab/kernels.hpp"
#include "gslab/numeric.hpp"
#include "gslab/testfunctions.hpp"

namespace {

std::vector<gslab::ResolventQuery> make_queries(std::size_t count) {
  std::mt19937_64 rng(1);
  std::vector<gslab::ResolventQuery> q;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::uint64_t>(gslab::uniform01(rng) * 1e5);
    q.push_back({n, gslab::uniform01(rng), 0.01 + 10.0 * gslab::uniform01(rng)});
  }
  return q;
}

void BM_ResolventBatch(benchmark::State& state) {
  const auto q = make_queries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gslab::resolvent_batch(q));
}

void BM_ResolventBatchSerial(benchmark::State& state) {
  const auto q = make_queries(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gslab::resolvent_batch_serial(q));
}

const gslab::GroundStateModel& model() {
  static const auto g = gslab::GroundStateModel::gaussian(1, 1.0);
  return g;
}

const gslab::SampledWaveFunction& indicator() {
  static const auto f = gslab::normalized_indicator(gslab::RegionSpec::interval(-1, 1), 2001);
  return f;
}

void BM_OverlapSweep(benchmark::State& state) {
  const auto lambdas = gslab::logspace(1e-8, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gslab::overlap_sweep(model(), indicator(), lambdas));
}

void BM_OverlapSweepSerial(benchmark::State& state) {
  const auto lambdas = gslab::logspace(1e-8, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gslab::overlap_sweep_serial(model(), indicator(), lambdas));
}

void BM_NumberSweep(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const auto ns = gslab::logspace(1e2, 1e6, count);
  const auto lambdas = gslab::logspace(1e-3, 1e-1, count);
  const auto region = gslab::RegionSpec::interval(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gslab::number_sweep(model(), region, ns, lambdas, 2001));
}

void BM_NumberSweepSerial(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const auto ns = gslab::logspace(1e2, 1e6, count);
  const auto lambdas = gslab::logspace(1e-3, 1e-1, count);
  const auto region = gslab::RegionSpec::interval(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gslab::number_sweep_serial(model(), region, ns, lambdas, 2001));
}

}  // namespace

BENCHMARK(BM_ResolventBatch)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ResolventBatchSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_OverlapSweep)->Arg(64);
BENCHMARK(BM_OverlapSweepSerial)->Arg(64);
BENCHMARK(BM_NumberSweep)->Arg(16);
BENCHMARK(BM_NumberSweepSerial)->Arg(16);

BENCHMARK_MAIN();
