// Copyright 2026 The MASE Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "mase/coalitions.h"
#include "mase/distribution.h"
#include "mase/evaluator.h"
#include "mase/ftpl.h"
#include "mase/game.h"
#include "mase/lp.h"
#include "mase/rng.h"
#include "mase/structure.h"

namespace mase {
namespace {

// Lifted 1-degree random polymatrix game with connected pair coalitions.
struct PolymatrixFixture {
  explicit PolymatrixFixture(int players)
      : base(RandomPolymatrix(players, 1.0, 2, 7)),
        lifted(std::make_shared<EdgePlayerGame>(base)),
        coalitions(LiftCoalitions(*lifted, ConnectedUpToSize(*base, 2))),
        layout(lifted, coalitions,
               HeuristicTreeDecomposition(BuildDependencyGraph(*lifted)),
               Objective::kAverage) {}

  std::shared_ptr<const PolymatrixGame> base;
  std::shared_ptr<const EdgePlayerGame> lifted;
  CoalitionSet coalitions;
  MetaGameLayout layout;
};

void BM_CorrelatorStep(benchmark::State& state) {
  PolymatrixFixture fixture(static_cast<int>(state.range(0)));
  Correlator correlator(fixture.layout);
  SplitMix64 rng(1);
  std::vector<double> noise(fixture.layout.Plan().TotalSize());
  for (auto _ : state) {
    SampleExponentialNoise(0.01, rng, noise);
    benchmark::DoNotOptimize(correlator.Respond(noise).value);
  }
  state.counters["bags"] = fixture.layout.Decomposition().Bags().size();
}
BENCHMARK(BM_CorrelatorStep)->Arg(10)->Arg(30)->Arg(100);

void BM_DeviatorStep(benchmark::State& state) {
  PolymatrixFixture fixture(static_cast<int>(state.range(0)));
  Deviator deviator(fixture.layout);
  SplitMix64 rng(2);
  std::vector<std::vector<double>> noise(
      fixture.layout.Terms().size(),
      std::vector<double>(fixture.layout.Plan().TotalSize()));
  for (auto _ : state) {
    for (auto& table : noise) SampleExponentialNoise(0.01, rng, table);
    benchmark::DoNotOptimize(deviator.Respond(noise).value);
  }
  state.counters["terms"] = fixture.layout.Terms().size();
}
BENCHMARK(BM_DeviatorStep)->Arg(10)->Arg(30);

void BM_SolveMase(benchmark::State& state) {
  auto base = RandomPolymatrix(30, 1.0, 2, 3);
  const CoalitionSet coalitions = ConnectedUpToSize(*base, 2);
  SolverConfig config;
  config.horizon = static_cast<int>(state.range(0));
  config.eta = 0.01;
  config.record_every = -1;
  config.keep_history = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveMasePolymatrix(base, coalitions, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveMase)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CoalitionExploitability(benchmark::State& state) {
  auto game = RandomPolymatrix(static_cast<int>(state.range(0)), 1.0, 2, 5);
  const CoalitionSet coalitions = ConnectedUpToSize(*game, 2);
  const TreeDecomposition td =
      HeuristicTreeDecomposition(BuildDependencyGraph(*game));
  SplitMix64 rng(4);
  std::vector<SparseDistribution::Entry> entries;
  for (int k = 0; k < 64; ++k) {
    JointAction a(game->NumPlayers());
    for (int& x : a) x = static_cast<int>(rng.Next() % 2);
    entries.push_back({a, 1.0 / 64});
  }
  const SparseDistribution pi = SparseDistribution::FromEntries(entries);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        CoalitionExploitability(*game, pi, coalitions, Objective::kAverage, &td)
            .value);
  }
}
BENCHMARK(BM_CoalitionExploitability)->Arg(10)->Arg(30);

void BM_LpMase(benchmark::State& state) {
  auto game = RandomNormalForm(3, static_cast<int>(state.range(0)), 11);
  const CoalitionSet coalitions = AllUpToSize(3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        LpMase(*game, coalitions, Objective::kAverage).value);
  }
}
BENCHMARK(BM_LpMase)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mase

BENCHMARK_MAIN();
