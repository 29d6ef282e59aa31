#include <benchmark/benchmark.h>

#include "branchmix/bnb.hpp"
#include "branchmix/erm.hpp"
#include "branchmix/generators.hpp"

using namespace branchmix;

static void BM_LpRootSolve(benchmark::State& state) {
  const MilpInstance q = gen_facility_location(5, 6, 11);
  const LinearProgram lp = relaxation(q, {});
  for (auto _ : state) benchmark::DoNotOptimize(lp_solve(lp));
}
BENCHMARK(BM_LpRootSolve);

static void BM_BnbKnapsack(benchmark::State& state) {
  const MilpInstance q = knapsack_example();
  const ScoringSpec spec = ScoringSpec::single(ScoreRule::Product);
  for (auto _ : state) benchmark::DoNotOptimize(bnb_run(q, spec, {}));
}
BENCHMARK(BM_BnbKnapsack);

static void BM_BnbFamilyF(benchmark::State& state) {
  const MilpInstance q = family_F({static_cast<int>(state.range(0)), 0.45, 1.0});
  BnbConfig cfg;
  cfg.node_policy = NodePolicy::DepthFirst;
  const ScoringSpec spec =
      ScoringSpec::pair(ScoreRule::MinChange, ScoreRule::MaxChange, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(bnb_run(q, spec, cfg));
}
BENCHMARK(BM_BnbFamilyF)->Arg(8)->Arg(12);

static void BM_ExactSweepFamilyF(benchmark::State& state) {
  const MilpInstance q = family_F({8, 0.45, 1.0});
  BnbConfig cfg;
  cfg.node_policy = NodePolicy::DepthFirst;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        milp_behaviors(q, ScoreRule::MinChange, ScoreRule::MaxChange, cfg, 1e6));
}
BENCHMARK(BM_ExactSweepFamilyF);

BENCHMARK_MAIN();
