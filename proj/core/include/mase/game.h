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

#ifndef MASE_GAME_H_
#define MASE_GAME_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mase/common.h"

namespace mase {

// A succinct N-player game. Player i's utility depends only on the actions
// of the players in its neighborhood N(i), which always contains i.
//
// Joint actions are indexed lexicographically with player 0 as the most
// significant digit. The same convention is used by utility tensors,
// strategy files and LP columns.
//
// Games are immutable after construction and safe to share across threads.
class Game {
 public:
  Game(std::vector<std::vector<std::string>> action_names,
       std::vector<std::vector<int>> neighborhoods);
  virtual ~Game() = default;

  int NumPlayers() const { return static_cast<int>(action_counts_.size()); }
  int NumActions(int player) const { return action_counts_[player]; }
  const std::vector<int>& ActionCounts() const { return action_counts_; }
  const std::vector<int>& Neighborhood(int player) const {
    return neighborhoods_[player];
  }
  const std::vector<std::string>& ActionNames(int player) const {
    return action_names_[player];
  }

  // Utility of `player` at `joint`, which holds one action per player. Only
  // the coordinates in Neighborhood(player) are read.
  virtual double Utility(int player, std::span<const int> joint) const = 0;

  // "normal_form", "polymatrix" or "edge_player".
  virtual std::string Kind() const = 0;

  // Number of joint actions, or limit + 1 when it exceeds `limit`.
  std::int64_t NumJointActions(std::int64_t limit) const;

  bool IsValidJointAction(std::span<const int> joint) const;

 private:
  std::vector<int> action_counts_;
  std::vector<std::vector<int>> neighborhoods_;
  std::vector<std::vector<std::string>> action_names_;
};

// Dense game: one utility tensor per player over all joint actions.
class NormalFormGame : public Game {
 public:
  // `utilities[i]` is player i's flat tensor in lexicographic order.
  NormalFormGame(std::vector<std::vector<std::string>> action_names,
                 std::vector<std::vector<double>> utilities);

  double Utility(int player, std::span<const int> joint) const override;
  std::string Kind() const override { return "normal_form"; }

  const std::vector<double>& UtilityTensor(int player) const {
    return utilities_[player];
  }
  std::int64_t Size() const { return size_; }
  std::int64_t FlatIndex(std::span<const int> joint) const;
  JointAction Unflatten(std::int64_t index) const;

 private:
  std::vector<std::vector<double>> utilities_;
  std::int64_t size_ = 1;
};

// One undirected interaction edge. `u_ij` is row-major over
// (a_i, a_j) and `u_ji` row-major over (a_j, a_i); the two tables are
// independent so payoffs may be asymmetric.
struct PolymatrixEdge {
  int i = 0;
  int j = 0;
  std::vector<double> u_ij;
  std::vector<double> u_ji;
};

// U_i(a) = sum over edges (i, j) of U_ij(a_i, a_j).
class PolymatrixGame : public Game {
 public:
  PolymatrixGame(std::vector<std::vector<std::string>> action_names,
                 std::vector<PolymatrixEdge> edges);

  double Utility(int player, std::span<const int> joint) const override;
  std::string Kind() const override { return "polymatrix"; }

  const std::vector<PolymatrixEdge>& Edges() const { return edges_; }
  // Indices into Edges() of the edges touching `player`.
  const std::vector<int>& IncidentEdges(int player) const {
    return incident_[player];
  }
  // Payoff to `player` from edge `edge` given both endpoint actions.
  double EdgePayoff(int edge, int player, int own_action,
                    int other_action) const;

 private:
  std::vector<PolymatrixEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

// Strategically equivalent reformulation of a polymatrix game in which every
// directed interaction (i, j) becomes a single-action "edge player" e_ij whose
// utility is U_ij(a_i, a_j), and original players receive utility 0.
//
// Players 0..N-1 are the original players; edge k = (i, j) of the base game
// contributes e_ij = N + 2k and e_ji = N + 2k + 1. N(e_ij) = {i, j, e_ij}.
class EdgePlayerGame : public Game {
 public:
  explicit EdgePlayerGame(std::shared_ptr<const PolymatrixGame> base);

  double Utility(int player, std::span<const int> joint) const override;
  std::string Kind() const override { return "edge_player"; }

  const PolymatrixGame& Base() const { return *base_; }
  int NumOriginalPlayers() const { return base_->NumPlayers(); }
  // Edge players e_ij owned by original player i.
  const std::vector<int>& OwnedEdgePlayers(int player) const {
    return owned_[player];
  }
  bool IsEdgePlayer(int player) const {
    return player >= NumOriginalPlayers();
  }

  JointAction Lift(std::span<const int> original) const;
  JointAction Project(std::span<const int> lifted) const;

 private:
  std::shared_ptr<const PolymatrixGame> base_;
  std::vector<std::vector<int>> owned_;
};

// Built-in games: "prisoners_dilemma" (alias "pd"), "stag_hunt", "chicken"
// and "pigou3". Throws InputError listing valid names otherwise.
std::shared_ptr<const NormalFormGame> BuiltinGame(std::string_view name);
std::vector<std::string> BuiltinGameNames();
bool IsBuiltinGameName(std::string_view name);

// Every entry i.i.d. uniform on [0, 1] (player-major, then lexicographic
// joint index), then rescaled so the global minimum is 0 and maximum is 1.
std::shared_ptr<const NormalFormGame> RandomNormalForm(
    int num_players, int action_count, std::uint64_t seed,
    const SizeCaps& caps = SizeCaps::FromEnvironment());

// Erdos-Renyi interaction graph with edge probability c / (N - 1). Draw
// order: one uniform per unordered pair (i < j, lexicographic), then for
// each connected pair the u_ij table followed by the u_ji table. Entries are
// then shifted and scaled so every player's total utility spans into [0, 1]
// using the global min and max of the player totals.
std::shared_ptr<const PolymatrixGame> RandomPolymatrix(
    int num_players, double expected_degree, int action_count,
    std::uint64_t seed, const SizeCaps& caps = SizeCaps::FromEnvironment());

}  // namespace mase

#endif  // MASE_GAME_H_
