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
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace mase {
namespace {

void CheckCount(std::int64_t count, const SizeCaps& caps) {
  if (count > caps.coalitions) {
    throw CapError("coalition family would exceed " +
                   std::to_string(caps.coalitions) + " coalitions");
  }
}

// Parses the integer or real after "name:" in a coalition spec.
template <typename T>
T ParseSpecArgument(std::string_view spec, std::string_view argument) {
  T value{};
  const char* first = argument.data();
  const char* last = argument.data() + argument.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || argument.empty()) {
    throw InputError("cannot parse coalition spec '" + std::string(spec) +
                     "'");
  }
  return value;
}

}  // namespace

CoalitionSet::CoalitionSet(std::vector<Coalition> coalitions) {
  std::map<std::vector<int>, int> position;
  for (Coalition& c : coalitions) {
    if (c.members.empty()) throw InputError("coalitions must be non-empty");
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw InputError("coalition weights must be finite and >= 0");
    }
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()),
                    c.members.end());
    if (c.members.front() < 0) {
      throw InputError("coalition members must be non-negative");
    }
    if (c.divisor <= 0) c.divisor = static_cast<int>(c.members.size());
    auto [it, inserted] =
        position.emplace(c.members, static_cast<int>(coalitions_.size()));
    if (inserted) {
      coalitions_.push_back(std::move(c));
    } else {
      Coalition& kept = coalitions_[it->second];
      kept.weight = std::max(kept.weight, c.weight);
    }
  }
}

void CoalitionSet::Validate(const Game& game) const {
  for (const Coalition& c : coalitions_) {
    if (c.members.back() >= game.NumPlayers()) {
      throw InputError("coalition member " + std::to_string(c.members.back()) +
                       " is not a player of the game");
    }
  }
}

std::int64_t CoalitionSet::DeviationSpaceSize(const Game& game,
                                              std::int64_t limit) const {
  std::int64_t total = 0;
  for (const Coalition& c : coalitions_) {
    std::vector<int> sizes;
    for (int i : c.members) sizes.push_back(game.NumActions(i));
    total += SaturatingProduct(sizes, limit);
    if (total > limit) return limit + 1;
  }
  return total;
}

CoalitionSet Singletons(int n) {
  std::vector<Coalition> coalitions;
  for (int i = 0; i < n; ++i) coalitions.push_back({{i}, 1.0, 1});
  return CoalitionSet(std::move(coalitions));
}

CoalitionSet AllUpToSize(int n, int k, const SizeCaps& caps) {
  if (k < 1 || k > n) throw InputError("coalition size bound must be in [1, N]");
  std::int64_t count = 0;
  std::int64_t binomial = 1;
  for (int s = 1; s <= k; ++s) {
    binomial = binomial * (n - s + 1) / s;
    count += binomial;
    CheckCount(count, caps);
  }
  std::vector<Coalition> coalitions;
  for (int s = 1; s <= k; ++s) {
    std::vector<int> members(s);
    for (int m = 0; m < s; ++m) members[m] = m;
    while (true) {
      coalitions.push_back({members, 1.0, s});
      int m = s - 1;
      while (m >= 0 && members[m] == n - s + m) --m;
      if (m < 0) break;
      ++members[m];
      for (int r = m + 1; r < s; ++r) members[r] = members[r - 1] + 1;
    }
  }
  return CoalitionSet(std::move(coalitions));
}

CoalitionSet ConnectedUpToSize(const PolymatrixGame& game, int k,
                               const SizeCaps& caps) {
  if (k < 1) throw InputError("coalition size bound must be >= 1");
  const int n = game.NumPlayers();
  std::vector<std::vector<int>> neighbors(n);
  for (int i = 0; i < n; ++i) {
    for (int j : game.Neighborhood(i)) {
      if (j != i) neighbors[i].push_back(j);
    }
  }
  std::vector<Coalition> coalitions;
  std::set<std::vector<int>> level;
  for (int i = 0; i < n; ++i) level.insert({i});
  for (int size = 1; size <= k && !level.empty(); ++size) {
    for (const auto& members : level) {
      coalitions.push_back({members, 1.0, size});
    }
    CheckCount(static_cast<std::int64_t>(coalitions.size()), caps);
    if (size == k) break;
    std::set<std::vector<int>> next;
    for (const auto& members : level) {
      for (int v : members) {
        for (int u : neighbors[v]) {
          if (std::binary_search(members.begin(), members.end(), u)) continue;
          std::vector<int> grown = members;
          grown.insert(std::lower_bound(grown.begin(), grown.end(), u), u);
          next.insert(std::move(grown));
        }
      }
      CheckCount(static_cast<std::int64_t>(coalitions.size() + next.size()),
                 caps);
    }
    level = std::move(next);
  }
  return CoalitionSet(std::move(coalitions));
}

CoalitionSet EwfCoalitions(int n, double w) {
  if (!(w >= 0.0 && w < 1.0)) {
    throw InputError("EWF weight must satisfy 0 <= w < 1");
  }
  std::vector<Coalition> coalitions;
  for (int i = 0; i < n; ++i) coalitions.push_back({{i}, w, 1});
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  coalitions.push_back({all, 1.0 - w, n});
  return CoalitionSet(std::move(coalitions));
}

CoalitionSet LiftCoalitions(const EdgePlayerGame& game,
                            const CoalitionSet& coalitions) {
  coalitions.Validate(game.Base());
  std::vector<Coalition> lifted;
  for (const Coalition& c : coalitions) {
    Coalition l = c;
    for (int i : c.members) {
      const auto& owned = game.OwnedEdgePlayers(i);
      l.members.insert(l.members.end(), owned.begin(), owned.end());
    }
    std::sort(l.members.begin(), l.members.end());
    l.divisor = c.divisor;
    lifted.push_back(std::move(l));
  }
  return CoalitionSet(std::move(lifted));
}

CoalitionSet ParseCoalitionSpec(std::string_view spec, const Game& game) {
  const int n = game.NumPlayers();
  if (spec == "singletons") return Singletons(n);
  if (spec == "all") return AllUpToSize(n, n);
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view argument =
      colon == std::string_view::npos ? std::string_view{}
                                      : spec.substr(colon + 1);
  if (name == "upto") {
    return AllUpToSize(n, std::min(n, ParseSpecArgument<int>(spec, argument)));
  }
  if (name == "connected") {
    const auto* polymatrix = dynamic_cast<const PolymatrixGame*>(&game);
    if (polymatrix == nullptr) {
      throw InputError("'connected:k' coalitions need a polymatrix game");
    }
    return ConnectedUpToSize(*polymatrix,
                             ParseSpecArgument<int>(spec, argument));
  }
  if (name == "ewf") {
    return EwfCoalitions(n, ParseSpecArgument<double>(spec, argument));
  }
  throw InputError("unknown coalition spec '" + std::string(spec) +
                   "'; expected singletons, all, upto:k, connected:k or ewf:w");
}

Objective ParseObjective(std::string_view name) {
  if (name == "average") return Objective::kAverage;
  if (name == "weighted") return Objective::kWeighted;
  if (name == "maximum") return Objective::kMaximum;
  throw InputError("unknown objective '" + std::string(name) +
                   "'; expected average, weighted or maximum");
}

std::string ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kAverage:
      return "average";
    case Objective::kWeighted:
      return "weighted";
    case Objective::kMaximum:
      return "maximum";
  }
  return "unknown";
}

std::vector<GainTerm> ExpandTerms(const CoalitionSet& coalitions,
                                  Objective objective) {
  std::vector<GainTerm> terms;
  for (int k = 0; k < coalitions.size(); ++k) {
    const Coalition& c = coalitions[k];
    switch (objective) {
      case Objective::kAverage:
        terms.push_back({k, -1, 1.0 / c.divisor, c.members});
        break;
      case Objective::kWeighted:
        terms.push_back({k, -1, c.weight / c.divisor, c.members});
        break;
      case Objective::kMaximum:
        for (int i : c.members) terms.push_back({k, i, c.weight, {i}});
        break;
    }
  }
  return terms;
}

}  // namespace mase
