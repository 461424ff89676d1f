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

#ifndef MASE_COALITIONS_H_
#define MASE_COALITIONS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mase/common.h"
#include "mase/game.h"

namespace mase {

// A deviating coalition. Its average gain is scaled by `weight` and divided
// by `divisor`, which is |members| except for coalitions lifted into an
// edge-player game, where it stays the number of original players.
struct Coalition {
  std::vector<int> members;  // sorted
  double weight = 1.0;
  int divisor = 0;
};

// An ordered family of distinct coalitions. Order matters: it is the first
// key of every lexicographic tie-break.
class CoalitionSet {
 public:
  CoalitionSet() = default;
  // Sorts members, fills default divisors and merges duplicate coalitions
  // (the first position and the largest weight are kept). Throws InputError
  // on empty coalitions or negative / non-finite weights.
  explicit CoalitionSet(std::vector<Coalition> coalitions);

  int size() const { return static_cast<int>(coalitions_.size()); }
  bool empty() const { return coalitions_.empty(); }
  const Coalition& operator[](int k) const { return coalitions_[k]; }
  std::vector<Coalition>::const_iterator begin() const {
    return coalitions_.begin();
  }
  std::vector<Coalition>::const_iterator end() const {
    return coalitions_.end();
  }

  // Throws InputError if a member is not a player of `game`.
  void Validate(const Game& game) const;

  // Sum over coalitions of prod_{i in S} |A_i|, saturating at limit + 1.
  std::int64_t DeviationSpaceSize(const Game& game, std::int64_t limit) const;

 private:
  std::vector<Coalition> coalitions_;
};

// {{0}, ..., {n-1}}, weight 1.
CoalitionSet Singletons(int n);

// All non-empty subsets of size <= k, ordered by size then lexicographically.
CoalitionSet AllUpToSize(int n, int k,
                         const SizeCaps& caps = SizeCaps::FromEnvironment());

// Singletons plus every subset of size <= k that is connected in the
// interaction graph, ordered by size then lexicographically.
CoalitionSet ConnectedUpToSize(
    const PolymatrixGame& game, int k,
    const SizeCaps& caps = SizeCaps::FromEnvironment());

// Singletons with weight w plus the grand coalition with weight 1 - w.
// Requires 0 <= w < 1.
CoalitionSet EwfCoalitions(int n, double w);

// Maps each coalition S of original players to S plus the edge players
// e_ij with i in S, keeping |S| as the averaging divisor.
CoalitionSet LiftCoalitions(const EdgePlayerGame& game,
                            const CoalitionSet& coalitions);

// Parses "singletons", "upto:k", "all", "connected:k" or "ewf:w" against
// `game`. "connected:k" requires a polymatrix game.
CoalitionSet ParseCoalitionSpec(std::string_view spec, const Game& game);

// How coalition gains are aggregated.
//   kAverage:  (1 / |S|) * sum of member gains; coalition weights ignored.
//   kWeighted: (w_S / |S|) * sum of member gains.
//   kMaximum:  w_S * max over members of the member's gain; the deviator
//              also picks the member.
enum class Objective { kAverage, kWeighted, kMaximum };

Objective ParseObjective(std::string_view name);
std::string ObjectiveName(Objective objective);

// One choice of "which gains count" for the deviator: coalition S deviates
// and the gains of `gain_players` are summed with `coefficient`. There is
// one term per coalition, or one per (coalition, member) for kMaximum.
struct GainTerm {
  int coalition = 0;
  int target = -1;  // the member for kMaximum, -1 otherwise
  double coefficient = 1.0;
  std::vector<int> gain_players;
};

std::vector<GainTerm> ExpandTerms(const CoalitionSet& coalitions,
                                  Objective objective);

}  // namespace mase

#endif  // MASE_COALITIONS_H_
