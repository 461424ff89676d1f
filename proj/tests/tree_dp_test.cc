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


#include "mase/tree_dp.h"

#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "mase/rng.h"
#include "mase/structure.h"
#include "test_util.h"

namespace mase {
namespace {

// All assignments over `domain`, lexicographic.
std::vector<JointAction> Assignments(const std::vector<int>& domain) {
  std::vector<JointAction> all;
  JointAction a(domain.size(), 0);
  while (true) {
    all.push_back(a);
    int i = static_cast<int>(domain.size()) - 1;
    while (i >= 0 && ++a[i] == domain[i]) a[i--] = 0;
    if (i < 0) break;
  }
  return all;
}

double Objective(const DpPlan& plan, const std::vector<double>& scores,
                 const std::vector<double>& noise, Sense sense,
                 const JointAction& a) {
  const double sign = sense == Sense::kMinimize ? -1.0 : 1.0;
  double total = 0.0;
  for (int b = 0; b < plan.NumBags(); ++b) {
    const std::int64_t k = plan.Offset(b) + plan.LocalIndex(b, a);
    total += scores[k] + (noise.empty() ? 0.0 : sign * noise[k]);
  }
  return total;
}

TEST(DpPlanTest, LayoutAndDecode) {
  TreeDecomposition td({{0, 1}, {1, 2}}, {{0, 1}});
  DpPlan plan(td, {2, 3, 2});
  EXPECT_EQ(plan.BagSize(0), 6);
  EXPECT_EQ(plan.BagSize(1), 6);
  EXPECT_EQ(plan.TotalSize(), 12);
  EXPECT_EQ(plan.Offset(1), 6);
  for (std::int64_t k = 0; k < 6; ++k) {
    JointAction a(3, 0);
    plan.Decode(0, k, a);
    EXPECT_EQ(plan.LocalIndex(0, a), k);
  }
}

TEST(DpPlanTest, MatchesBruteForceOnRandomTables) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.NextInt(6);
    DependencyGraph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.NextDouble() < 0.4) g.AddEdge(u, v);
      }
    }
    TreeDecomposition td = trial % 5 == 0 ? testing::SingleBag(n)
                                          : testing::RandomDecomposition(g, rng, true);
    std::vector<int> domain(n);
    for (int& d : domain) d = 1 + rng.NextInt(3);
    DpPlan plan(td, domain);
    std::vector<double> scores(plan.TotalSize()), noise(plan.TotalSize());
    for (double& s : scores) s = rng.NextDouble();
    for (double& x : noise) x = rng.NextExponential(2.0);
    for (Sense sense : {Sense::kMinimize, Sense::kMaximize}) {
      for (bool use_noise : {false, true}) {
        const std::vector<double> eps = use_noise ? noise : std::vector<double>{};
        DpPlan::Result r = plan.Optimize(scores, sense, eps);
        double best = sense == Sense::kMinimize
                          ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
        JointAction arg;
        for (const JointAction& a : Assignments(domain)) {
          const double v = Objective(plan, scores, eps, sense, a);
          if (sense == Sense::kMinimize ? v < best - 1e-12 : v > best + 1e-12) {
            best = v;
            arg = a;
          }
        }
        EXPECT_NEAR(r.value, best, 1e-9);
        EXPECT_NEAR(Objective(plan, scores, eps, sense, r.assignment), best, 1e-9);
      }
    }
  }
}

TEST(DpPlanTest, AllZeroTablesGiveLexicographicallySmallest) {
  SplitMix64 rng(1);
  DependencyGraph g(4);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  g.AddEdge(2, 3);
  for (int trial = 0; trial < 10; ++trial) {
    DpPlan plan(testing::RandomDecomposition(g, rng, false), {3, 2, 3, 2});
    std::vector<double> zeros(plan.TotalSize(), 0.0);
    EXPECT_EQ(plan.Optimize(zeros, Sense::kMinimize).assignment,
              (JointAction{0, 0, 0, 0}));
    EXPECT_EQ(plan.Optimize({}, Sense::kMaximize).assignment,
              (JointAction{0, 0, 0, 0}));
  }
}

TEST(DpPlanTest, WorkspaceReuseGivesSameResult) {
  TreeDecomposition td({{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}});
  DpPlan plan(td, {2, 2, 2, 2});
  SplitMix64 rng(7);
  DpPlan::Workspace workspace;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> scores(plan.TotalSize());
    for (double& s : scores) s = rng.NextDouble();
    auto fresh = plan.Optimize(scores, Sense::kMaximize);
    auto reused = plan.Optimize(scores, Sense::kMaximize, {}, workspace);
    EXPECT_EQ(fresh.assignment, reused.assignment);
    EXPECT_EQ(fresh.value, reused.value);
  }
}

}  // namespace
}  // namespace mase
