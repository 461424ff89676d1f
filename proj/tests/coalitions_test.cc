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


#include "mase/coalitions.h"

#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "mase/common.h"
#include "mase/game.h"
#include "test_util.h"

namespace mase {
namespace {

std::vector<std::vector<int>> Members(const CoalitionSet& set) {
  std::vector<std::vector<int>> out;
  for (const Coalition& c : set) out.push_back(c.members);
  return out;
}

TEST(CoalitionSetTest, SortsMergesAndFillsDivisors) {
  CoalitionSet set({{{2, 0}, 0.5, 0}, {{1}, 1.0, 0}, {{0, 2}, 0.75, 0}});
  ASSERT_EQ(set.size(), 2);
  EXPECT_EQ(set[0].members, (std::vector<int>{0, 2}));
  EXPECT_EQ(set[0].weight, 0.75);
  EXPECT_EQ(set[0].divisor, 2);
  EXPECT_EQ(set[1].divisor, 1);
}

TEST(CoalitionSetTest, RejectsBadInput) {
  EXPECT_THROW(CoalitionSet({{{}, 1.0, 0}}), InputError);
  EXPECT_THROW(CoalitionSet({{{0}, -1.0, 0}}), InputError);
  EXPECT_THROW(CoalitionSet({{{0}, std::nan(""), 0}}), InputError);
  CoalitionSet set({{{0, 3}, 1.0, 0}});
  EXPECT_THROW(set.Validate(*BuiltinGame("pd")), InputError);
}

TEST(CoalitionSetTest, DeviationSpaceSize) {
  auto pigou = BuiltinGame("pigou3");
  EXPECT_EQ(AllUpToSize(3, 3).DeviationSpaceSize(*pigou, 1000), 6 + 12 + 8);
  EXPECT_EQ(AllUpToSize(3, 3).DeviationSpaceSize(*pigou, 10), 11);
}

TEST(SingletonsTest, Basic) {
  EXPECT_EQ(Members(Singletons(1)), (std::vector<std::vector<int>>{{0}}));
  CoalitionSet three = Singletons(3);
  EXPECT_EQ(Members(three), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  for (const Coalition& c : three) EXPECT_EQ(c.weight, 1.0);
}

TEST(AllUpToSizeTest, Counts) {
  const auto pairs = Members(AllUpToSize(2, 2));
  std::set<std::vector<int>> two(pairs.begin(), pairs.end());
  EXPECT_EQ(two, (std::set<std::vector<int>>{{0}, {1}, {0, 1}}));
  EXPECT_EQ(AllUpToSize(3, 3).size(), 7);
  EXPECT_EQ(AllUpToSize(4, 2).size(), 10);
  EXPECT_EQ(AllUpToSize(10, 10).size(), 1023);
  EXPECT_THROW(AllUpToSize(3, 0), InputError);
  EXPECT_THROW(AllUpToSize(3, 4), InputError);
}

TEST(AllUpToSizeTest, CountCap) {
  SizeCaps caps;
  caps.coalitions = 100;
  EXPECT_THROW(AllUpToSize(10, 10, caps), CapError);
  EXPECT_NO_THROW(AllUpToSize(10, 2, caps));
}

TEST(ConnectedUpToSizeTest, PathAndEdgeless) {
  auto path = testing::PathPolymatrix3();
  std::set<std::vector<int>> got;
  for (const auto& m : Members(ConnectedUpToSize(*path, 2))) got.insert(m);
  EXPECT_EQ(got, (std::set<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {1, 2}}));
  EXPECT_EQ(ConnectedUpToSize(*path, 3).size(), 6);
  auto edgeless = RandomPolymatrix(4, 0.0, 2, 0);
  EXPECT_EQ(ConnectedUpToSize(*edgeless, 2).size(), 4);
}

TEST(ConnectedUpToSizeTest, SubsetOfAllAndInducedConnected) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = RandomPolymatrix(7, 2.0, 2, seed);
    CoalitionSet connected = ConnectedUpToSize(*g, 3);
    std::set<std::vector<int>> all;
    for (const auto& m : Members(AllUpToSize(7, 3))) all.insert(m);
    int expected = 0;
    for (const auto& m : all) {
      // Count connected subsets by flood fill over interaction edges.
      std::set<int> reached = {m[0]};
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& e : g->Edges()) {
          const bool in_i = std::count(m.begin(), m.end(), e.i) > 0;
          const bool in_j = std::count(m.begin(), m.end(), e.j) > 0;
          if (in_i && in_j && reached.count(e.i) != reached.count(e.j)) {
            reached.insert(e.i);
            reached.insert(e.j);
            grew = true;
          }
        }
      }
      expected += reached.size() == m.size();
    }
    EXPECT_EQ(connected.size(), expected);
    for (const Coalition& c : connected) EXPECT_TRUE(all.count(c.members));
  }
}

TEST(EwfCoalitionsTest, Weights) {
  CoalitionSet zero = EwfCoalitions(2, 0.0);
  ASSERT_EQ(zero.size(), 3);
  double grand = -1, singles = 0;
  for (const Coalition& c : zero) {
    if (c.members.size() == 2) grand = c.weight;
    else singles += c.weight;
  }
  EXPECT_EQ(grand, 1.0);
  EXPECT_EQ(singles, 0.0);
  for (const Coalition& c : EwfCoalitions(2, 0.5)) EXPECT_EQ(c.weight, 0.5);
  for (const Coalition& c : EwfCoalitions(3, 0.9)) {
    EXPECT_NEAR(c.weight, c.members.size() == 3 ? 0.1 : 0.9, 1e-15);
  }
  EXPECT_THROW(EwfCoalitions(2, 1.0), InputError);
  EXPECT_THROW(EwfCoalitions(2, -0.1), InputError);
}

TEST(LiftCoalitionsTest, AddsOwnedEdgePlayersAndKeepsDivisor) {
  EdgePlayerGame lifted(testing::PathPolymatrix3());
  CoalitionSet set = LiftCoalitions(lifted, AllUpToSize(3, 2));
  for (const Coalition& c : set) {
    int originals = 0;
    for (int p : c.members) originals += !lifted.IsEdgePlayer(p);
    EXPECT_EQ(c.divisor, originals);
    int expected_edges = 0;
    for (int p = 0; p < originals; ++p) {
      expected_edges += lifted.OwnedEdgePlayers(c.members[p]).size();
    }
    EXPECT_EQ(static_cast<int>(c.members.size()), originals + expected_edges);
  }
}

TEST(ParseTest, Specs) {
  auto pigou = BuiltinGame("pigou3");
  EXPECT_EQ(ParseCoalitionSpec("singletons", *pigou).size(), 3);
  EXPECT_EQ(ParseCoalitionSpec("all", *pigou).size(), 7);
  EXPECT_EQ(ParseCoalitionSpec("upto:2", *pigou).size(), 6);
  EXPECT_EQ(ParseCoalitionSpec("upto:9", *pigou).size(), 7);
  EXPECT_EQ(ParseCoalitionSpec("ewf:0.25", *pigou).size(), 4);
  EXPECT_EQ(ParseCoalitionSpec("connected:2", *testing::PathPolymatrix3()).size(), 5);
  EXPECT_THROW(ParseCoalitionSpec("connected:2", *pigou), InputError);
  EXPECT_THROW(ParseCoalitionSpec("upto:x", *pigou), InputError);
  EXPECT_THROW(ParseCoalitionSpec("pairs", *pigou), InputError);
}

TEST(ObjectiveTest, ParseAndExpand) {
  EXPECT_EQ(ParseObjective("maximum"), Objective::kMaximum);
  EXPECT_EQ(ObjectiveName(Objective::kAverage), "average");
  EXPECT_THROW(ParseObjective("minimum"), InputError);

  CoalitionSet set({{{0, 1}, 0.5, 0}, {{2}, 2.0, 0}});
  auto weighted = ExpandTerms(set, Objective::kWeighted);
  ASSERT_EQ(weighted.size(), 2u);
  EXPECT_DOUBLE_EQ(weighted[0].coefficient, 0.25);
  EXPECT_EQ(weighted[0].gain_players, (std::vector<int>{0, 1}));
  EXPECT_EQ(weighted[0].target, -1);
  auto average = ExpandTerms(set, Objective::kAverage);
  EXPECT_DOUBLE_EQ(average[0].coefficient, 0.5);
  EXPECT_DOUBLE_EQ(average[1].coefficient, 1.0);
  auto maximum = ExpandTerms(set, Objective::kMaximum);
  ASSERT_EQ(maximum.size(), 3u);
  EXPECT_EQ(maximum[1].target, 1);
  EXPECT_EQ(maximum[1].gain_players, (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(maximum[1].coefficient, 0.5);
}

}  // namespace
}  // namespace mase
