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


#include "mase/structure.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "gtest/gtest.h"
#include "mase/common.h"
#include "mase/game.h"
#include "mase/rng.h"
#include "test_util.h"

namespace mase {
namespace {

DependencyGraph Graph(int n, const std::vector<std::pair<int, int>>& edges) {
  DependencyGraph g(n);
  for (auto [u, v] : edges) g.AddEdge(u, v);
  return g;
}

DependencyGraph RandomGraph(SplitMix64& rng, int n, double p) {
  DependencyGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.NextDouble() < p) g.AddEdge(u, v);
    }
  }
  return g;
}

TEST(DependencyGraphTest, TwoPlayerNormalFormIsComplete) {
  DependencyGraph g = BuildDependencyGraph(*BuiltinGame("pd"));
  EXPECT_EQ(g.num_vertices, 2);
  EXPECT_TRUE(g.HasEdge(0, 1));
  EXPECT_EQ(g.NumEdges(), 1);
}

TEST(DependencyGraphTest, IndependentPlayersHaveNoEdges) {
  auto g = std::make_shared<testing::LocalTableGame>(
      std::vector<int>{2, 2, 2},
      std::vector<std::vector<int>>{{0}, {1}, {2}},
      std::vector<std::vector<double>>{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}});
  EXPECT_EQ(BuildDependencyGraph(*g).NumEdges(), 0);
}

TEST(DependencyGraphTest, NeighborhoodsAreCliques) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto game = testing::RandomLocalGame(rng, 6, 2);
    DependencyGraph g = BuildDependencyGraph(*game);
    int expected_edges = 0;
    for (int u = 0; u < game->NumPlayers(); ++u) {
      for (int v = u + 1; v < game->NumPlayers(); ++v) {
        bool shared = false;
        for (int k = 0; k < game->NumPlayers(); ++k) {
          const auto& h = game->Neighborhood(k);
          shared |= std::binary_search(h.begin(), h.end(), u) &&
                    std::binary_search(h.begin(), h.end(), v);
        }
        EXPECT_EQ(g.HasEdge(u, v), shared);
        expected_edges += shared;
      }
    }
    EXPECT_EQ(g.NumEdges(), expected_edges);
  }
}

TEST(DependencyGraphTest, EdgePlayerPathCliques) {
  EdgePlayerGame lifted(testing::PathPolymatrix3());
  DependencyGraph g = BuildDependencyGraph(lifted);
  // Players 0-1-2, edge players 3..6 with two per original edge.
  for (int e = 3; e < 7; ++e) {
    int original_neighbors = 0;
    for (int i = 0; i < 3; ++i) original_neighbors += g.HasEdge(e, i);
    EXPECT_EQ(original_neighbors, 2);
  }
  EXPECT_TRUE(g.HasEdge(0, 1));
  EXPECT_TRUE(g.HasEdge(1, 2));
  EXPECT_FALSE(g.HasEdge(0, 2));
  // Each edge player forms a triangle with its endpoints; the two edge
  // players of one edge are not adjacent.
  EXPECT_EQ(g.NumEdges(), 2 * 5);
  for (int e = 3; e < 7; ++e) {
    for (int f = e + 1; f < 7; ++f) EXPECT_FALSE(g.HasEdge(e, f));
  }
}

TEST(ValidateTest, SingleBagAlwaysValid) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DependencyGraph g = RandomGraph(rng, 6, 0.5);
    EXPECT_FALSE(ValidateTreeDecomposition(testing::SingleBag(6), g).has_value());
  }
}

TEST(ValidateTest, UncoveredEdgeWitness) {
  DependencyGraph g = Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  TreeDecomposition td({{0, 1}, {1, 2}}, {{0, 1}});
  auto violation = ValidateTreeDecomposition(td, g);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->kind, TdViolation::Kind::kUncoveredEdge);
  EXPECT_EQ(violation->edge, std::make_pair(0, 2));
}

TEST(ValidateTest, DisconnectedVertexWitness) {
  DependencyGraph g = Graph(5, {{1, 2}, {1, 4}});
  TreeDecomposition td({{1, 2}, {3, 0}, {1, 4}}, {{0, 1}, {1, 2}});
  auto violation = ValidateTreeDecomposition(td, g);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->kind, TdViolation::Kind::kDisconnectedVertex);
  EXPECT_EQ(violation->vertex, 1);
  EXPECT_EQ(violation->bag_path, (std::vector<int>{0, 1, 2}));
}

TEST(ValidateTest, UncoveredAndOutOfRange) {
  DependencyGraph g(3);
  auto missing = ValidateTreeDecomposition(TreeDecomposition({{0, 1}}, {}), g);
  ASSERT_TRUE(missing.has_value());
  EXPECT_EQ(missing->kind, TdViolation::Kind::kUncoveredVertex);
  EXPECT_EQ(missing->vertex, 2);
  auto range = ValidateTreeDecomposition(TreeDecomposition({{0, 1, 2, 5}}, {}), g);
  ASSERT_TRUE(range.has_value());
  EXPECT_EQ(range->kind, TdViolation::Kind::kVertexOutOfRange);
}

TEST(ValidateTest, RandomDecompositionsAreValid) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    DependencyGraph g = RandomGraph(rng, 1 + rng.NextInt(7), 0.4);
    TreeDecomposition td = testing::RandomDecomposition(g, rng, true);
    EXPECT_FALSE(ValidateTreeDecomposition(td, g).has_value());
  }
}

TEST(TreeDecompositionTest, RejectsNonTrees) {
  EXPECT_THROW(TreeDecomposition({{0}, {1}, {2}}, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(TreeDecomposition({{0}, {1}, {2}}, {{0, 1}}), InputError);
  EXPECT_THROW(TreeDecomposition({{0}, {1}}, {{0, 1}}, 4), InputError);
}

TEST(TreeDecompositionTest, RootingAndPaths) {
  TreeDecomposition td({{0}, {0, 1}, {1, 2}, {1, 3}}, {{0, 1}, {1, 2}, {1, 3}}, 2);
  EXPECT_EQ(td.Root(), 2);
  EXPECT_EQ(td.Parent(2), -1);
  EXPECT_EQ(td.Parent(1), 2);
  EXPECT_EQ(td.Parent(0), 1);
  EXPECT_EQ(td.Path(0, 3), (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(td.PostOrder().back(), 2);
  EXPECT_EQ(td.Width(), 1);
}

TEST(HeuristicTest, ValidOnRandomGraphs) {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    DependencyGraph g = RandomGraph(rng, 1 + rng.NextInt(20), 0.2);
    TreeDecomposition td = HeuristicTreeDecomposition(g);
    EXPECT_FALSE(ValidateTreeDecomposition(td, g).has_value());
    EXPECT_EQ(td.Root(), 0);
  }
}

TEST(HeuristicTest, MatchesBruteForceTreewidthOnSmallGraphs) {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    DependencyGraph g = RandomGraph(rng, 1 + rng.NextInt(8), 0.45);
    TreeDecomposition td = HeuristicTreeDecomposition(g);
    EXPECT_EQ(td.Width(), testing::BruteForceTreewidth(g)) << "trial " << trial;
  }
}

TEST(HeuristicTest, MinFillWidthIsAnUpperBound) {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    DependencyGraph g = RandomGraph(rng, 2 + rng.NextInt(7), 0.5);
    TreeDecomposition td = DecompositionFromOrdering(g, MinFillOrdering(g));
    EXPECT_FALSE(ValidateTreeDecomposition(td, g).has_value());
    EXPECT_GE(td.Width(), testing::BruteForceTreewidth(g));
  }
}

TEST(HeuristicTest, CompleteAndEmptyGraphs) {
  DependencyGraph complete(5);
  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) complete.AddEdge(u, v);
  }
  TreeDecomposition td = HeuristicTreeDecomposition(complete);
  EXPECT_EQ(td.Width(), 4);
  EXPECT_EQ(td.NumBags(), 1);
  EXPECT_EQ(HeuristicTreeDecomposition(DependencyGraph(6)).Width(), 0);
}

TEST(HeuristicTest, TreeGraphsHaveWidthOne) {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + rng.NextInt(30);
    DependencyGraph g(n);
    for (int v = 1; v < n; ++v) g.AddEdge(v, rng.NextInt(v));
    EXPECT_EQ(HeuristicTreeDecomposition(g).Width(), 1);
  }
}

TEST(AssignPlayersTest, SingleBagAndDisjointBags) {
  auto pd = BuiltinGame("pd");
  EXPECT_EQ(AssignPlayers(testing::SingleBag(2), *pd), (std::vector<int>{0, 0}));
  auto independent = std::make_shared<testing::LocalTableGame>(
      std::vector<int>{2, 2}, std::vector<std::vector<int>>{{0}, {1}},
      std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, 0.0}});
  TreeDecomposition td({{1}, {0}}, {{0, 1}});
  EXPECT_EQ(AssignPlayers(td, *independent), (std::vector<int>{1, 0}));
  EXPECT_THROW(AssignPlayers(TreeDecomposition({{0}, {1}}, {{0, 1}}), *pd),
               InputError);
}

TEST(AssignPlayersTest, EdgePlayersLandWithTheirClique) {
  EdgePlayerGame lifted(testing::PathPolymatrix3());
  TreeDecomposition td = HeuristicTreeDecomposition(BuildDependencyGraph(lifted));
  std::vector<int> assignment = AssignPlayers(td, lifted);
  for (int p = 0; p < lifted.NumPlayers(); ++p) {
    const auto& bag = td.Bag(assignment[p]);
    for (int j : lifted.Neighborhood(p)) {
      EXPECT_TRUE(std::binary_search(bag.begin(), bag.end(), j));
    }
    // Lowest qualifying bag.
    for (int b = 0; b < assignment[p]; ++b) {
      const auto& other = td.Bag(b);
      bool contains = true;
      for (int j : lifted.Neighborhood(p)) {
        contains &= std::binary_search(other.begin(), other.end(), j);
      }
      EXPECT_FALSE(contains);
    }
  }
}

}  // namespace
}  // namespace mase
