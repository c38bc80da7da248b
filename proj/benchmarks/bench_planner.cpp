#include <benchmark/benchmark.h>

#include "eznav/planner.hpp"
#include "eznav/scenario_io.hpp"

namespace {

eznav::Scenario golden(int n_nodes) {
  eznav::Scenario s = eznav::load_scenario(EZNAV_SOURCE_DIR "/scenarios/golden_pursuer.json").scenario;
  s.options.n_nodes = n_nodes;
  return s;
}

void BM_PlanGolden(benchmark::State& state) {
  const eznav::Scenario s = golden(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eznav::plan(s));
  }
}
BENCHMARK(BM_PlanGolden)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ResampleAndVerify(benchmark::State& state) {
  const eznav::Scenario s = golden(100);
  const eznav::PlanResult res = eznav::plan(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eznav::resample_and_verify(res, s, 10));
  }
}
BENCHMARK(BM_ResampleAndVerify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
