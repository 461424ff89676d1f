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
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <string>

namespace mase {
namespace {

bool IsSubset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool Contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

// -- DependencyGraph ----------------------------------------------------------

void DependencyGraph::AddEdge(int u, int v) {
  if (u == v) return;
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(adjacency[u], v);
  insert(adjacency[v], u);
}

bool DependencyGraph::HasEdge(int u, int v) const {
  return Contains(adjacency[u], v);
}

int DependencyGraph::NumEdges() const {
  int twice = 0;
  for (const auto& list : adjacency) twice += static_cast<int>(list.size());
  return twice / 2;
}

std::vector<std::pair<int, int>> DependencyGraph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_vertices; ++u) {
    for (int v : adjacency[u]) {
      if (u < v) edges.push_back({u, v});
    }
  }
  return edges;
}

DependencyGraph BuildDependencyGraph(const Game& game) {
  DependencyGraph graph(game.NumPlayers());
  for (int k = 0; k < game.NumPlayers(); ++k) {
    const std::vector<int>& hood = game.Neighborhood(k);
    for (std::size_t a = 0; a < hood.size(); ++a) {
      for (std::size_t b = a + 1; b < hood.size(); ++b) {
        graph.AddEdge(hood[a], hood[b]);
      }
    }
  }
  return graph;
}

// -- TreeDecomposition --------------------------------------------------------

TreeDecomposition::TreeDecomposition(std::vector<std::vector<int>> bags,
                                     std::vector<std::pair<int, int>> edges,
                                     int root)
    : bags_(std::move(bags)), edges_(std::move(edges)), root_(root) {
  const int k = NumBags();
  if (k < 1) throw InputError("a tree decomposition needs at least one bag");
  if (root_ < 0 || root_ >= k) throw InputError("root bag out of range");
  for (auto& bag : bags_) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    if (!bag.empty() && bag.front() < 0) {
      throw InputError("bag members must be non-negative");
    }
  }
  if (static_cast<int>(edges_.size()) != k - 1) {
    throw InputError("a tree over " + std::to_string(k) + " bags needs " +
                     std::to_string(k - 1) + " edges, got " +
                     std::to_string(edges_.size()));
  }
  std::vector<std::vector<int>> adjacent(k);
  for (const auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= k || b >= k || a == b) {
      throw InputError("tree edge (" + std::to_string(a) + ", " +
                       std::to_string(b) + ") is invalid");
    }
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  parent_.assign(k, -1);
  depth_.assign(k, -1);
  children_.assign(k, {});
  std::vector<int> pre_order;
  std::vector<int> stack = {root_};
  depth_[root_] = 0;
  while (!stack.empty()) {
    const int b = stack.back();
    stack.pop_back();
    pre_order.push_back(b);
    for (auto it = adjacent[b].rbegin(); it != adjacent[b].rend(); ++it) {
      const int c = *it;
      if (c == parent_[b]) continue;
      if (depth_[c] != -1) throw InputError("tree decomposition has a cycle");
      parent_[c] = b;
      depth_[c] = depth_[b] + 1;
      stack.push_back(c);
    }
  }
  if (static_cast<int>(pre_order.size()) != k) {
    throw InputError("tree decomposition is not connected");
  }
  for (int b : pre_order) {
    if (parent_[b] >= 0) children_[parent_[b]].push_back(b);
  }
  for (auto& list : children_) std::sort(list.begin(), list.end());
  post_order_.assign(pre_order.rbegin(), pre_order.rend());
}

int TreeDecomposition::Width() const {
  int width = -1;
  for (const auto& bag : bags_) {
    width = std::max(width, static_cast<int>(bag.size()) - 1);
  }
  return width;
}

std::vector<int> TreeDecomposition::Path(int from, int to) const {
  std::vector<int> up;
  std::vector<int> down;
  while (from != to) {
    if (depth_[from] >= depth_[to]) {
      up.push_back(from);
      from = parent_[from];
    } else {
      down.push_back(to);
      to = parent_[to];
    }
  }
  up.push_back(from);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

// -- Validation ---------------------------------------------------------------

std::optional<TdViolation> ValidateTreeDecomposition(
    const TreeDecomposition& td, const DependencyGraph& graph) {
  const int n = graph.num_vertices;
  for (int b = 0; b < td.NumBags(); ++b) {
    for (int v : td.Bag(b)) {
      if (v >= n) {
        TdViolation violation;
        violation.kind = TdViolation::Kind::kVertexOutOfRange;
        violation.vertex = v;
        violation.bag_path = {b};
        violation.message = "bag " + std::to_string(b) + " names vertex " +
                            std::to_string(v) + " but the graph has " +
                            std::to_string(n) + " vertices";
        return violation;
      }
    }
  }

  std::vector<std::vector<int>> holders(n);
  for (int b = 0; b < td.NumBags(); ++b) {
    for (int v : td.Bag(b)) holders[v].push_back(b);
  }
  for (int v = 0; v < n; ++v) {
    if (holders[v].empty()) {
      TdViolation violation;
      violation.kind = TdViolation::Kind::kUncoveredVertex;
      violation.vertex = v;
      violation.message =
          "property 1: vertex " + std::to_string(v) + " is in no bag";
      return violation;
    }
  }

  for (const auto& [u, v] : graph.Edges()) {
    bool covered = false;
    for (int b : holders[u]) {
      if (Contains(td.Bag(b), v)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      TdViolation violation;
      violation.kind = TdViolation::Kind::kUncoveredEdge;
      violation.edge = {u, v};
      violation.message = "property 2: edge (" + std::to_string(u) + ", " +
                          std::to_string(v) + ") is in no bag";
      return violation;
    }
  }

  for (int v = 0; v < n; ++v) {
    // The bags holding v are connected iff exactly one of them has a parent
    // that does not hold v.
    std::vector<int> tops;
    for (int b : holders[v]) {
      const int p = td.Parent(b);
      if (p < 0 || !Contains(td.Bag(p), v)) tops.push_back(b);
    }
    if (tops.size() > 1) {
      TdViolation violation;
      violation.kind = TdViolation::Kind::kDisconnectedVertex;
      violation.vertex = v;
      violation.bag_path = td.Path(tops[0], tops[1]);
      violation.message = "property 3: bags holding vertex " +
                          std::to_string(v) + " are not connected (bags " +
                          std::to_string(tops[0]) + " and " +
                          std::to_string(tops[1]) + ")";
      return violation;
    }
  }
  return std::nullopt;
}

// -- Construction -------------------------------------------------------------

TreeDecomposition DecompositionFromOrdering(const DependencyGraph& graph,
                                            const std::vector<int>& order) {
  const int n = graph.num_vertices;
  if (n == 0) return TreeDecomposition(std::vector<std::vector<int>>(1), {});
  if (static_cast<int>(order.size()) != n) {
    throw InputError("elimination ordering must list every vertex once");
  }
  std::vector<int> position(n, -1);
  for (int k = 0; k < n; ++k) {
    if (order[k] < 0 || order[k] >= n || position[order[k]] != -1) {
      throw InputError("elimination ordering must be a permutation");
    }
    position[order[k]] = k;
  }

  std::vector<std::set<int>> adjacent(n);
  for (int v = 0; v < n; ++v) {
    adjacent[v].insert(graph.adjacency[v].begin(), graph.adjacency[v].end());
  }
  std::vector<std::vector<int>> bags(n);
  std::vector<int> attach(n, -1);
  for (int k = 0; k < n; ++k) {
    const int v = order[k];
    std::vector<int> neighbors(adjacent[v].begin(), adjacent[v].end());
    bags[k] = neighbors;
    bags[k].push_back(v);
    std::sort(bags[k].begin(), bags[k].end());
    int earliest = -1;
    for (int u : neighbors) {
      if (earliest < 0 || position[u] < earliest) earliest = position[u];
    }
    attach[k] = earliest;
    for (std::size_t a = 0; a < neighbors.size(); ++a) {
      adjacent[neighbors[a]].erase(v);
      for (std::size_t b = a + 1; b < neighbors.size(); ++b) {
        adjacent[neighbors[a]].insert(neighbors[b]);
        adjacent[neighbors[b]].insert(neighbors[a]);
      }
    }
  }

  // Component roots hang off the last bag, which is always a root.
  int root = n - 1;
  std::vector<std::set<int>> tree(n);
  for (int k = 0; k < n - 1; ++k) {
    const int p = attach[k] >= 0 ? attach[k] : root;
    tree[k].insert(p);
    tree[p].insert(k);
  }

  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < n && !changed; ++u) {
      if (!alive[u]) continue;
      for (int w : tree[u]) {
        if (!IsSubset(bags[u], bags[w])) continue;
        for (int x : tree[u]) {
          if (x == w) continue;
          tree[x].erase(u);
          tree[x].insert(w);
          tree[w].insert(x);
        }
        tree[w].erase(u);
        tree[u].clear();
        alive[u] = false;
        if (root == u) root = w;
        changed = true;
        break;
      }
    }
  }

  std::vector<int> new_index(n, -1);
  std::vector<std::vector<int>> new_bags;
  std::vector<std::pair<int, int>> new_edges;
  std::deque<int> queue = {root};
  new_index[root] = 0;
  new_bags.push_back(bags[root]);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : tree[u]) {
      if (new_index[w] != -1) continue;
      new_index[w] = static_cast<int>(new_bags.size());
      new_bags.push_back(bags[w]);
      new_edges.push_back({new_index[u], new_index[w]});
      queue.push_back(w);
    }
  }
  return TreeDecomposition(std::move(new_bags), std::move(new_edges), 0);
}

std::vector<int> MinFillOrdering(const DependencyGraph& graph) {
  const int n = graph.num_vertices;
  std::vector<std::set<int>> adjacent(n);
  for (int v = 0; v < n; ++v) {
    adjacent[v].insert(graph.adjacency[v].begin(), graph.adjacency[v].end());
  }
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::int64_t best_fill = std::numeric_limits<std::int64_t>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::vector<int> neighbors(adjacent[v].begin(), adjacent[v].end());
      std::int64_t fill = 0;
      for (std::size_t a = 0; a < neighbors.size() && fill < best_fill; ++a) {
        for (std::size_t b = a + 1; b < neighbors.size(); ++b) {
          if (!adjacent[neighbors[a]].count(neighbors[b])) ++fill;
        }
      }
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<int> neighbors(adjacent[best].begin(), adjacent[best].end());
    for (std::size_t a = 0; a < neighbors.size(); ++a) {
      adjacent[neighbors[a]].erase(best);
      for (std::size_t b = a + 1; b < neighbors.size(); ++b) {
        adjacent[neighbors[a]].insert(neighbors[b]);
        adjacent[neighbors[b]].insert(neighbors[a]);
      }
    }
    adjacent[best].clear();
    eliminated[best] = true;
    order.push_back(best);
  }
  return order;
}

std::vector<int> ExactOrdering(const DependencyGraph& graph) {
  const int n = graph.num_vertices;
  if (n > kExactOrderingMaxVertices) {
    throw InputError("exact ordering is limited to " +
                     std::to_string(kExactOrderingMaxVertices) + " vertices");
  }
  std::vector<std::uint32_t> neighbor_mask(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int u : graph.adjacency[v]) neighbor_mask[v] |= 1u << u;
  }
  // Number of not-yet-eliminated vertices adjacent to v once every vertex in
  // `eliminated` is gone: those reachable from v through eliminated ones.
  auto degree_after = [&](std::uint32_t eliminated, int v) {
    std::uint32_t visited = 1u << v;
    std::uint32_t frontier = 1u << v;
    std::uint32_t reached = 0;
    while (frontier) {
      const int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint32_t next = neighbor_mask[x] & ~visited;
      visited |= next;
      frontier |= next & eliminated;
      reached |= next & ~eliminated;
    }
    return std::popcount(reached);
  };

  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> width(std::size_t{full} + 1, 0);
  std::vector<int> last(std::size_t{full} + 1, -1);
  width[0] = -1;
  for (std::uint32_t set = 1; set <= full && set != 0; ++set) {
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t rest = set; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t before = set & ~(1u << v);
      const int w = std::max(width[before], degree_after(before, v));
      if (w < best) {
        best = w;
        last[set] = v;
      }
    }
    width[set] = best;
  }
  std::vector<int> order(n);
  std::uint32_t set = full;
  for (int k = n - 1; k >= 0; --k) {
    order[k] = last[set];
    set &= ~(1u << last[set]);
  }
  return order;
}

TreeDecomposition HeuristicTreeDecomposition(const DependencyGraph& graph) {
  if (graph.num_vertices <= kExactOrderingMaxVertices) {
    return DecompositionFromOrdering(graph, ExactOrdering(graph));
  }
  return DecompositionFromOrdering(graph, MinFillOrdering(graph));
}

std::vector<int> AssignPlayers(const TreeDecomposition& td, const Game& game) {
  std::vector<int> assignment(game.NumPlayers(), -1);
  for (int i = 0; i < game.NumPlayers(); ++i) {
    for (int b = 0; b < td.NumBags(); ++b) {
      if (IsSubset(game.Neighborhood(i), td.Bag(b))) {
        assignment[i] = b;
        break;
      }
    }
    if (assignment[i] < 0) {
      throw InputError("decomposition invalid: no bag contains the "
                       "neighborhood of player " + std::to_string(i));
    }
  }
  return assignment;
}

}  // namespace mase
