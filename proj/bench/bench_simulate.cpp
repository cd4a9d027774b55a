// Serial reference vs OpenMP simulator, plus the analytic pipeline.

#include <benchmark/benchmark.h>

#include "lightbulb/cohort_io.hpp"
#include "lightbulb/simulate.hpp"
#include "support/cohorts.hpp"

namespace {

using namespace lightbulb;

void BM_SimulateSerial(benchmark::State& state) {
  const SimulationConfig config{static_cast<std::uint64_t>(state.range(0)), 42, testing::synthetic18()};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSerial)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_SimulateParallel(benchmark::State& state) {
  const SimulationConfig config{static_cast<std::uint64_t>(state.range(0)), 42, testing::synthetic18()};
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(config, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateParallel)
    ->ArgsProduct({{10'000, 1'000'000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond);

void BM_AnalyticPipeline(benchmark::State& state) {
  const auto text = emit_cohort(testing::synthetic18());
  for (auto _ : state) benchmark::DoNotOptimize(emit_series(risk_series(parse_cohort(text)), Format::Csv));
}
BENCHMARK(BM_AnalyticPipeline)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
