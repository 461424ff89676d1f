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

#ifndef MASE_STRUCTURE_H_
#define MASE_STRUCTURE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mase/game.h"

namespace mase {

// Undirected graph joining i and j whenever both lie in some N(k).
struct DependencyGraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> adjacency;  // sorted, no self loops

  explicit DependencyGraph(int n = 0) : num_vertices(n), adjacency(n) {}
  void AddEdge(int u, int v);
  bool HasEdge(int u, int v) const;
  int NumEdges() const;
  std::vector<std::pair<int, int>> Edges() const;  // u < v, sorted
};

DependencyGraph BuildDependencyGraph(const Game& game);

// A rooted tree of bags. Bag members are kept sorted; the root defaults to
// bag 0.
class TreeDecomposition {
 public:
  // Throws InputError unless `edges` form a spanning tree over the bags.
  TreeDecomposition(std::vector<std::vector<int>> bags,
                    std::vector<std::pair<int, int>> edges, int root = 0);

  int NumBags() const { return static_cast<int>(bags_.size()); }
  const std::vector<int>& Bag(int b) const { return bags_[b]; }
  const std::vector<std::vector<int>>& Bags() const { return bags_; }
  const std::vector<std::pair<int, int>>& Edges() const { return edges_; }
  int Root() const { return root_; }
  int Parent(int b) const { return parent_[b]; }  // -1 for the root
  const std::vector<int>& Children(int b) const { return children_[b]; }
  // Every bag after all of its children.
  const std::vector<int>& PostOrder() const { return post_order_; }
  // max |B| - 1; -1 when every bag is empty.
  int Width() const;

  // Bags on the unique tree path from `from` to `to`, inclusive.
  std::vector<int> Path(int from, int to) const;

 private:
  std::vector<std::vector<int>> bags_;
  std::vector<std::pair<int, int>> edges_;
  int root_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<int> post_order_;
};

// First violated decomposition property, with witnesses.
struct TdViolation {
  enum class Kind {
    kVertexOutOfRange,    // a bag names a vertex outside [N]
    kUncoveredVertex,     // property 1: union of bags != [N]
    kUncoveredEdge,       // property 2: an edge lies in no bag
    kDisconnectedVertex,  // property 3: bags holding a vertex not connected
  };
  Kind kind = Kind::kVertexOutOfRange;
  int vertex = -1;
  std::pair<int, int> edge{-1, -1};
  std::vector<int> bag_path;  // for kDisconnectedVertex: path between two
                              // bags holding `vertex` through one without it
  std::string message;
};

// Checks properties 1-3 in order and reports the first violation found.
std::optional<TdViolation> ValidateTreeDecomposition(
    const TreeDecomposition& td, const DependencyGraph& graph);

// Decomposition induced by eliminating vertices in `order`: the bag of v is
// v plus its neighbors at elimination time, attached to the bag of the
// earliest-eliminated such neighbor. Bags contained in a neighbor are
// contracted, and the result is re-indexed breadth-first from the root.
TreeDecomposition DecompositionFromOrdering(const DependencyGraph& graph,
                                            const std::vector<int>& order);

// Greedy min-fill ordering, ties broken by lowest vertex index.
std::vector<int> MinFillOrdering(const DependencyGraph& graph);

// Graphs up to this many vertices get an exact minimum-width ordering.
inline constexpr int kExactOrderingMaxVertices = 12;

// Minimum-width elimination ordering by dynamic programming over vertex
// subsets. Requires num_vertices <= kExactOrderingMaxVertices.
std::vector<int> ExactOrdering(const DependencyGraph& graph);

// Exact ordering on small graphs, min-fill otherwise.
TreeDecomposition HeuristicTreeDecomposition(const DependencyGraph& graph);

// For each player, the lowest-index bag containing N(i). Throws InputError
// if some player has no such bag.
std::vector<int> AssignPlayers(const TreeDecomposition& td, const Game& game);

}  // namespace mase

#endif  // MASE_STRUCTURE_H_
