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

#include "mase/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "mase/rng.h"

namespace mase {
namespace {

std::vector<std::vector<std::string>> DefaultActionNames(int num_players,
                                                         int action_count) {
  std::vector<std::string> names;
  for (int a = 0; a < action_count; ++a) names.push_back(std::to_string(a));
  return std::vector<std::vector<std::string>>(num_players, names);
}

std::vector<std::vector<int>> FullNeighborhoods(int num_players) {
  std::vector<int> all(num_players);
  for (int i = 0; i < num_players; ++i) all[i] = i;
  return std::vector<std::vector<int>>(num_players, all);
}

std::vector<std::vector<int>> PolymatrixNeighborhoods(
    int num_players, const std::vector<PolymatrixEdge>& edges) {
  std::vector<std::vector<int>> neighborhoods(num_players);
  for (int i = 0; i < num_players; ++i) neighborhoods[i].push_back(i);
  for (const PolymatrixEdge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= num_players || e.j >= num_players ||
        e.i == e.j) {
      throw InputError("polymatrix edge (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ") is not a valid player pair");
    }
    neighborhoods[e.i].push_back(e.j);
    neighborhoods[e.j].push_back(e.i);
  }
  for (auto& n : neighborhoods) {
    std::sort(n.begin(), n.end());
    if (std::adjacent_find(n.begin(), n.end()) != n.end()) {
      throw InputError("polymatrix game has a duplicate edge");
    }
  }
  return neighborhoods;
}

std::vector<std::vector<std::string>> EdgePlayerActionNames(
    const PolymatrixGame& base) {
  std::vector<std::vector<std::string>> names;
  for (int i = 0; i < base.NumPlayers(); ++i) {
    names.push_back(base.ActionNames(i));
  }
  for (std::size_t k = 0; k < 2 * base.Edges().size(); ++k) {
    names.push_back({"edge"});
  }
  return names;
}

std::vector<std::vector<int>> EdgePlayerNeighborhoods(
    const PolymatrixGame& base) {
  const int n = base.NumPlayers();
  std::vector<std::vector<int>> neighborhoods;
  for (int i = 0; i < n; ++i) neighborhoods.push_back({i});
  for (std::size_t k = 0; k < base.Edges().size(); ++k) {
    const PolymatrixEdge& e = base.Edges()[k];
    const int lo = std::min(e.i, e.j);
    const int hi = std::max(e.i, e.j);
    const int e_ij = n + 2 * static_cast<int>(k);
    neighborhoods.push_back({lo, hi, e_ij});
    neighborhoods.push_back({lo, hi, e_ij + 1});
  }
  return neighborhoods;
}

}  // namespace

// -- Game ---------------------------------------------------------------------

Game::Game(std::vector<std::vector<std::string>> action_names,
           std::vector<std::vector<int>> neighborhoods)
    : neighborhoods_(std::move(neighborhoods)),
      action_names_(std::move(action_names)) {
  const int n = static_cast<int>(action_names_.size());
  if (n < 1) throw InputError("a game needs at least one player");
  if (static_cast<int>(neighborhoods_.size()) != n) {
    throw InputError("one neighborhood per player is required");
  }
  for (int i = 0; i < n; ++i) {
    if (action_names_[i].empty()) {
      throw InputError("player " + std::to_string(i) + " has no actions");
    }
    action_counts_.push_back(static_cast<int>(action_names_[i].size()));
    auto& hood = neighborhoods_[i];
    std::sort(hood.begin(), hood.end());
    hood.erase(std::unique(hood.begin(), hood.end()), hood.end());
    if (!std::binary_search(hood.begin(), hood.end(), i)) {
      throw InputError("player " + std::to_string(i) +
                       " must belong to its own neighborhood");
    }
    if (hood.front() < 0 || hood.back() >= n) {
      throw InputError("neighborhood of player " + std::to_string(i) +
                       " is out of range");
    }
  }
}

std::int64_t Game::NumJointActions(std::int64_t limit) const {
  return SaturatingProduct(action_counts_, limit);
}

bool Game::IsValidJointAction(std::span<const int> joint) const {
  if (static_cast<int>(joint.size()) != NumPlayers()) return false;
  for (int i = 0; i < NumPlayers(); ++i) {
    if (joint[i] < 0 || joint[i] >= action_counts_[i]) return false;
  }
  return true;
}

// -- NormalFormGame -----------------------------------------------------------

NormalFormGame::NormalFormGame(
    std::vector<std::vector<std::string>> action_names,
    std::vector<std::vector<double>> utilities)
    : Game(action_names, FullNeighborhoods(
                             static_cast<int>(action_names.size()))),
      utilities_(std::move(utilities)) {
  size_ = NumJointActions(std::numeric_limits<std::int32_t>::max());
  if (size_ > std::numeric_limits<std::int32_t>::max()) {
    throw CapError("normal-form tensor is too large to store");
  }
  if (static_cast<int>(utilities_.size()) != NumPlayers()) {
    throw InputError("normal-form game needs one utility tensor per player");
  }
  for (int i = 0; i < NumPlayers(); ++i) {
    if (static_cast<std::int64_t>(utilities_[i].size()) != size_) {
      throw InputError("utility tensor of player " + std::to_string(i) +
                       " has " + std::to_string(utilities_[i].size()) +
                       " entries, expected " + std::to_string(size_));
    }
    for (double u : utilities_[i]) {
      if (!std::isfinite(u) || u < -kTolerance || u > 1.0 + kTolerance) {
        throw InputError("normal-form utilities must lie in [0, 1]");
      }
    }
  }
}

std::int64_t NormalFormGame::FlatIndex(std::span<const int> joint) const {
  std::int64_t index = 0;
  for (int i = 0; i < NumPlayers(); ++i) {
    index = index * NumActions(i) + joint[i];
  }
  return index;
}

JointAction NormalFormGame::Unflatten(std::int64_t index) const {
  JointAction joint(NumPlayers());
  for (int i = NumPlayers() - 1; i >= 0; --i) {
    joint[i] = static_cast<int>(index % NumActions(i));
    index /= NumActions(i);
  }
  return joint;
}

double NormalFormGame::Utility(int player, std::span<const int> joint) const {
  return utilities_[player][FlatIndex(joint)];
}

// -- PolymatrixGame -----------------------------------------------------------

PolymatrixGame::PolymatrixGame(
    std::vector<std::vector<std::string>> action_names,
    std::vector<PolymatrixEdge> edges)
    : Game(action_names,
           PolymatrixNeighborhoods(static_cast<int>(action_names.size()),
                                   edges)),
      edges_(std::move(edges)),
      incident_(NumPlayers()) {
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const PolymatrixEdge& e = edges_[k];
    const std::size_t cells =
        static_cast<std::size_t>(NumActions(e.i)) * NumActions(e.j);
    if (e.u_ij.size() != cells || e.u_ji.size() != cells) {
      throw InputError("edge (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ") tables have the wrong size");
    }
    for (double u : e.u_ij) {
      if (!std::isfinite(u)) throw InputError("non-finite edge utility");
    }
    for (double u : e.u_ji) {
      if (!std::isfinite(u)) throw InputError("non-finite edge utility");
    }
    incident_[e.i].push_back(static_cast<int>(k));
    incident_[e.j].push_back(static_cast<int>(k));
  }
}

double PolymatrixGame::EdgePayoff(int edge, int player, int own_action,
                                  int other_action) const {
  const PolymatrixEdge& e = edges_[edge];
  if (player == e.i) return e.u_ij[own_action * NumActions(e.j) + other_action];
  return e.u_ji[own_action * NumActions(e.i) + other_action];
}

double PolymatrixGame::Utility(int player, std::span<const int> joint) const {
  double total = 0.0;
  for (int k : incident_[player]) {
    const PolymatrixEdge& e = edges_[k];
    const int other = e.i == player ? e.j : e.i;
    total += EdgePayoff(k, player, joint[player], joint[other]);
  }
  return total;
}

// -- EdgePlayerGame -----------------------------------------------------------

EdgePlayerGame::EdgePlayerGame(std::shared_ptr<const PolymatrixGame> base)
    : Game(EdgePlayerActionNames(*base), EdgePlayerNeighborhoods(*base)),
      base_(std::move(base)),
      owned_(base_->NumPlayers()) {
  const int n = base_->NumPlayers();
  for (std::size_t k = 0; k < base_->Edges().size(); ++k) {
    const PolymatrixEdge& e = base_->Edges()[k];
    owned_[e.i].push_back(n + 2 * static_cast<int>(k));
    owned_[e.j].push_back(n + 2 * static_cast<int>(k) + 1);
  }
}

double EdgePlayerGame::Utility(int player, std::span<const int> joint) const {
  const int n = NumOriginalPlayers();
  if (player < n) return 0.0;
  const int k = (player - n) / 2;
  const PolymatrixEdge& e = base_->Edges()[k];
  if ((player - n) % 2 == 0) {
    return base_->EdgePayoff(k, e.i, joint[e.i], joint[e.j]);
  }
  return base_->EdgePayoff(k, e.j, joint[e.j], joint[e.i]);
}

JointAction EdgePlayerGame::Lift(std::span<const int> original) const {
  JointAction lifted(NumPlayers(), 0);
  std::copy(original.begin(), original.end(), lifted.begin());
  return lifted;
}

JointAction EdgePlayerGame::Project(std::span<const int> lifted) const {
  return JointAction(lifted.begin(), lifted.begin() + NumOriginalPlayers());
}

// -- Built-in games -----------------------------------------------------------

std::vector<std::string> BuiltinGameNames() {
  return {"prisoners_dilemma", "pd", "stag_hunt", "chicken", "pigou3"};
}

bool IsBuiltinGameName(std::string_view name) {
  for (const std::string& n : BuiltinGameNames()) {
    if (n == name) return true;
  }
  return false;
}

std::shared_ptr<const NormalFormGame> BuiltinGame(std::string_view name) {
  if (name == "prisoners_dilemma" || name == "pd") {
    // Rows (C, D) x columns (C, D).
    return std::make_shared<NormalFormGame>(
        std::vector<std::vector<std::string>>{{"C", "D"}, {"C", "D"}},
        std::vector<std::vector<double>>{{0.6, 0.0, 1.0, 0.2},
                                         {0.6, 1.0, 0.0, 0.2}});
  }
  if (name == "stag_hunt") {
    return std::make_shared<NormalFormGame>(
        std::vector<std::vector<std::string>>{{"S", "H"}, {"S", "H"}},
        std::vector<std::vector<double>>{{1.0, 0.1, 0.8, 0.5},
                                         {1.0, 0.8, 0.1, 0.5}});
  }
  if (name == "chicken") {
    return std::make_shared<NormalFormGame>(
        std::vector<std::vector<std::string>>{{"Sw", "St"}, {"Sw", "St"}},
        std::vector<std::vector<double>>{{5.0 / 6.0, 2.0 / 3.0, 1.0, 0.0},
                                         {5.0 / 6.0, 1.0, 2.0 / 3.0, 0.0}});
  }
  if (name == "pigou3") {
    // Slow pays 0.25; fast pays 1.5 - 0.5 * (number of fast players).
    constexpr int kPlayers = 3;
    std::vector<std::vector<double>> utilities(kPlayers,
                                               std::vector<double>(8));
    for (int index = 0; index < 8; ++index) {
      int fast = 0;
      for (int i = 0; i < kPlayers; ++i) {
        if (((index >> (kPlayers - 1 - i)) & 1) == 0) ++fast;
      }
      for (int i = 0; i < kPlayers; ++i) {
        const bool is_fast = ((index >> (kPlayers - 1 - i)) & 1) == 0;
        utilities[i][index] = is_fast ? 1.5 - 0.5 * fast : 0.25;
      }
    }
    return std::make_shared<NormalFormGame>(
        std::vector<std::vector<std::string>>(kPlayers, {"fast", "slow"}),
        std::move(utilities));
  }
  std::string valid;
  for (const std::string& n : BuiltinGameNames()) {
    valid += (valid.empty() ? "" : ", ") + n;
  }
  throw InputError("unknown built-in game '" + std::string(name) +
                   "'; valid names: " + valid);
}

// -- Random generators --------------------------------------------------------

std::shared_ptr<const NormalFormGame> RandomNormalForm(int num_players,
                                                       int action_count,
                                                       std::uint64_t seed,
                                                       const SizeCaps& caps) {
  if (num_players < 1 || action_count < 1) {
    throw InputError("random normal-form game needs >= 1 player and action");
  }
  const std::int64_t size = SaturatingProduct(
      std::vector<int>(num_players, action_count), caps.joint_actions);
  if (size > caps.joint_actions) {
    throw CapError("random normal-form game would have more than " +
                   std::to_string(caps.joint_actions) + " joint actions");
  }
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> utilities(num_players,
                                             std::vector<double>(size));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto& tensor : utilities) {
    for (double& u : tensor) {
      u = rng.NextDouble();
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }
  const double range = hi - lo;
  for (auto& tensor : utilities) {
    for (double& u : tensor) u = range > 0.0 ? (u - lo) / range : 0.0;
  }
  return std::make_shared<NormalFormGame>(
      DefaultActionNames(num_players, action_count), std::move(utilities));
}

std::shared_ptr<const PolymatrixGame> RandomPolymatrix(
    int num_players, double expected_degree, int action_count,
    std::uint64_t seed, const SizeCaps& caps) {
  if (num_players < 1 || action_count < 1) {
    throw InputError("random polymatrix game needs >= 1 player and action");
  }
  if (!(expected_degree >= 0.0) ||
      (num_players > 1 && expected_degree > num_players - 1)) {
    throw InputError("expected degree must lie in [0, N - 1]");
  }
  SplitMix64 rng(seed);
  const double p =
      num_players > 1 ? expected_degree / (num_players - 1) : 0.0;
  std::vector<PolymatrixEdge> edges;
  for (int i = 0; i < num_players; ++i) {
    for (int j = i + 1; j < num_players; ++j) {
      if (rng.NextDouble() < p) edges.push_back(PolymatrixEdge{i, j, {}, {}});
    }
  }
  const std::size_t cells =
      static_cast<std::size_t>(action_count) * action_count;
  for (PolymatrixEdge& e : edges) {
    e.u_ij.resize(cells);
    e.u_ji.resize(cells);
    for (double& u : e.u_ij) u = rng.NextDouble();
    for (double& u : e.u_ji) u = rng.NextDouble();
  }

  // Global min / max of raw player totals, by enumerating each player's
  // local joint actions.
  std::vector<int> degree(num_players, 0);
  std::vector<std::vector<std::pair<int, int>>> incident(num_players);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    ++degree[edges[k].i];
    ++degree[edges[k].j];
    incident[edges[k].i].push_back({static_cast<int>(k), edges[k].j});
    incident[edges[k].j].push_back({static_cast<int>(k), edges[k].i});
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < num_players; ++i) {
    const int d = degree[i];
    const std::int64_t local = SaturatingProduct(
        std::vector<int>(d + 1, action_count), caps.joint_actions);
    if (local > caps.joint_actions) {
      throw CapError("player " + std::to_string(i) +
                     " has too many neighbors to normalize utilities");
    }
    // local[0] is player i's own action, local[1 + m] its m-th neighbor's.
    std::vector<int> actions(d + 1, 0);
    for (std::int64_t index = 0; index < local; ++index) {
      std::int64_t rest = index;
      for (int m = d; m >= 0; --m) {
        actions[m] = static_cast<int>(rest % action_count);
        rest /= action_count;
      }
      double total = 0.0;
      for (int m = 0; m < d; ++m) {
        const auto [k, other] = incident[i][m];
        const PolymatrixEdge& e = edges[k];
        total += e.i == i ? e.u_ij[actions[0] * action_count + actions[m + 1]]
                          : e.u_ji[actions[0] * action_count + actions[m + 1]];
      }
      lo = std::min(lo, total);
      hi = std::max(hi, total);
    }
  }
  const double range = hi - lo;
  if (range > 0.0) {
    for (PolymatrixEdge& e : edges) {
      const double shift_i = lo / degree[e.i];
      const double shift_j = lo / degree[e.j];
      for (double& u : e.u_ij) u = (u - shift_i) / range;
      for (double& u : e.u_ji) u = (u - shift_j) / range;
    }
  }
  return std::make_shared<PolymatrixGame>(
      DefaultActionNames(num_players, action_count), std::move(edges));
}

}  // namespace mase
