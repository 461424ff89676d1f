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


#include "mase/ewf.h"

#include <algorithm>
#include <memory>
#include <vector>

#include "gtest/gtest.h"
#include "mase/common.h"
#include "mase/evaluator.h"
#include "mase/ftpl.h"
#include "mase/game.h"
#include "mase/lp.h"

namespace mase {
namespace {

SolverConfig Config(std::uint64_t seed = 0) {
  SolverConfig config;
  config.seed = seed;
  return config;
}

TEST(WeightedSolveTest, PrisonersDilemmaEndpoints) {
  auto pd = BuiltinGame("pd");
  WeightedSolve cce = WeightedMaseSolve(pd, 0.999, EwfBackend::kLp, Config());
  EXPECT_NEAR(cce.exploitability, 0.0, 1e-3);
  EXPECT_NEAR(cce.welfare, LpWelfareUnderBudget(*pd, 0.0).value, 0.01);
  WeightedSolve grand = WeightedMaseSolve(pd, 0.0, EwfBackend::kLp, Config());
  EXPECT_NEAR(grand.welfare, 1.2, 1e-6);
  EXPECT_NEAR(grand.exploitability, 0.4, 1e-6);
  EXPECT_THROW(WeightedMaseSolve(pd, 1.0, EwfBackend::kLp, Config()), InputError);
}

TEST(WeightedSolveTest, StagHuntWelfareIsFixed) {
  auto sh = BuiltinGame("stag_hunt");
  for (double w : {0.0, 0.25, 0.5, 0.75, 0.99}) {
    EXPECT_NEAR(WeightedMaseSolve(sh, w, EwfBackend::kLp, Config()).welfare, 2.0, 1e-6);
  }
  SolverConfig long_run = Config(3);
  long_run.horizon = 100000;
  long_run.theory_rate = true;
  EXPECT_NEAR(WeightedMaseSolve(sh, 0.5, EwfBackend::kFtpl, long_run).welfare, 2.0, 0.05);
}

TEST(BinarySearchTest, PrisonersDilemma) {
  auto pd = BuiltinGame("pd");
  EXPECT_NEAR(EwfBinarySearch(pd, 0.1, 1e-3, EwfBackend::kLp, Config(1)).welfare, 1.0, 0.02);
  EXPECT_NEAR(EwfBinarySearch(pd, 0.0, 1e-3, EwfBackend::kLp, Config(1)).welfare, 0.4, 0.02);
  SolverConfig ftpl = Config(1);
  ftpl.horizon = 100000;
  ftpl.theory_rate = true;
  EwfSearchResult r = EwfBinarySearch(pd, 0.1, 1e-3, EwfBackend::kFtpl, ftpl);
  EXPECT_TRUE(r.feasible);
  EXPECT_LE(r.exploitability, 0.1 + 1e-9);
  EXPECT_NEAR(r.welfare, 1.0, 0.03);
}

TEST(BinarySearchTest, MatchesLpFrontierOnBuiltins) {
  for (const auto& name : {"pd", "stag_hunt", "chicken", "pigou3"}) {
    auto g = BuiltinGame(name);
    for (double eps : {0.0, 0.02, 0.05, 0.1, 0.2, 0.4}) {
      const double frontier = LpWelfareUnderBudget(*g, eps).value;
      EwfSearchResult r = EwfBinarySearch(g, eps, 1e-3, EwfBackend::kLp, Config());
      EXPECT_NEAR(r.welfare, frontier, 0.02) << name << " eps " << eps;
      if (r.feasible) {
        EXPECT_LE(r.welfare, frontier + 1e-6) << name << " eps " << eps;
        EXPECT_LE(r.exploitability, eps + 1e-9);
      }
      EwfSearchResult fine = EwfBinarySearch(g, eps, 1e-10, EwfBackend::kLp, Config());
      EXPECT_TRUE(fine.feasible) << name << " eps " << eps;
      EXPECT_NEAR(fine.welfare, frontier, 1e-6) << name << " eps " << eps;
    }
  }
}

TEST(BinarySearchTest, TraceExploitabilityFallsAsWeightRises) {
  for (const auto& name : {"pd", "chicken", "pigou3"}) {
    auto g = BuiltinGame(name);
    EwfSearchResult r = EwfBinarySearch(g, 0.05, 1e-4, EwfBackend::kLp, Config());
    std::vector<WeightedSolve> trace = r.trace;
    std::sort(trace.begin(), trace.end(),
              [](const WeightedSolve& a, const WeightedSolve& b) { return a.w < b.w; });
    for (std::size_t k = 1; k < trace.size(); ++k) {
      EXPECT_LE(trace[k].exploitability, trace[k - 1].exploitability + 1e-9) << name;
    }
  }
}

TEST(BinarySearchTest, RejectsBadArguments) {
  auto pd = BuiltinGame("pd");
  EXPECT_THROW(EwfBinarySearch(pd, -0.1, 1e-3, EwfBackend::kLp, Config()), InputError);
  EXPECT_THROW(EwfBinarySearch(pd, 0.1, 0.0, EwfBackend::kLp, Config()), InputError);
  EXPECT_THROW(ParseEwfBackend("cvx"), InputError);
  EXPECT_EQ(ParseEwfBackend("ftpl"), EwfBackend::kFtpl);
}

TEST(SweepTest, ConcaveAndMonotone) {
  auto pd = BuiltinGame("pd");
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(0.02 * k);
  auto points = EwfSweep(pd, SweepKind::kEpsilon, grid, EwfBackend::kLp, Config(), 1e-10);
  ASSERT_EQ(points.size(), grid.size());
  EXPECT_NEAR(points.front().welfare, 0.4, 1e-6);
  for (std::size_t k = 1; k < points.size(); ++k) {
    EXPECT_GE(points[k].epsilon, points[k - 1].epsilon);
    EXPECT_GE(points[k].welfare, points[k - 1].welfare - 1e-6);
    EXPECT_NEAR(points[k].welfare, LpWelfareUnderBudget(*pd, points[k].epsilon).value, 1e-6);
  }
  for (std::size_t k = 1; k + 1 < points.size(); ++k) {
    EXPECT_GE(points[k].welfare,
              0.5 * (points[k - 1].welfare + points[k + 1].welfare) - 1e-6);
  }
}

TEST(SweepTest, WeightSweepIsSortedByExploitability) {
  auto chicken = BuiltinGame("chicken");
  auto points = EwfSweep(chicken, SweepKind::kWeight, {0.9, 0.1, 0.5, 0.0},
                         EwfBackend::kLp, Config(), 1e-3);
  for (std::size_t k = 1; k < points.size(); ++k) {
    EXPECT_LE(points[k - 1].epsilon, points[k].epsilon);
    EXPECT_LE(points[k - 1].welfare, points[k].welfare + 1e-6);
  }
}

TEST(SweepTest, ParallelMatchesSerial) {
  auto pigou = BuiltinGame("pigou3");
  std::vector<double> grid = {0.0, 0.05, 0.1, 0.15};
  SolverConfig config = Config(8);
  config.horizon = 300;
  auto serial = EwfSweep(pigou, SweepKind::kEpsilon, grid, EwfBackend::kFtpl, config, 0.05, 1);
  auto parallel = EwfSweep(pigou, SweepKind::kEpsilon, grid, EwfBackend::kFtpl, config, 0.05, 3);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].welfare, parallel[k].welfare);
    EXPECT_EQ(serial[k].w, parallel[k].w);
  }
}

}  // namespace
}  // namespace mase
