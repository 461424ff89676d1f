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

#include "mase/distribution.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace mase {

SparseDistribution SparseDistribution::FromEntries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.action < b.action; });
  SparseDistribution dist;
  double total = 0.0;
  for (Entry& e : entries) {
    if (!std::isfinite(e.prob) || e.prob < 0.0) {
      throw InputError("strategy probabilities must be finite and >= 0");
    }
    total += e.prob;
    if (e.prob == 0.0) continue;
    if (!dist.entries_.empty() && dist.entries_.back().action == e.action) {
      dist.entries_.back().prob += e.prob;
    } else {
      dist.entries_.push_back(std::move(e));
    }
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw InputError("strategy probabilities sum to " + std::to_string(total) +
                     ", expected 1");
  }
  return dist;
}

SparseDistribution SparseDistribution::PointMass(JointAction action) {
  SparseDistribution dist;
  dist.entries_.push_back({std::move(action), 1.0});
  return dist;
}

SparseDistribution SparseDistribution::FromCounts(
    const std::map<JointAction, std::int64_t>& counts) {
  std::int64_t total = 0;
  for (const auto& [action, count] : counts) total += count;
  if (total <= 0) throw InputError("cannot normalize an empty count table");
  SparseDistribution dist;
  for (const auto& [action, count] : counts) {
    if (count > 0) {
      dist.entries_.push_back(
          {action, static_cast<double>(count) / static_cast<double>(total)});
    }
  }
  return dist;
}

void SparseDistribution::Validate(const Game& game) const {
  if (entries_.empty()) throw InputError("strategy has an empty support");
  for (const Entry& e : entries_) {
    if (!game.IsValidJointAction(e.action)) {
      throw InputError("strategy contains a joint action outside the game");
    }
  }
}

SparseDistribution SparseDistribution::Map(
    const std::function<JointAction(const JointAction&)>& fn) const {
  std::vector<Entry> mapped;
  mapped.reserve(entries_.size());
  double total = 0.0;
  for (const Entry& e : entries_) {
    mapped.push_back({fn(e.action), e.prob});
    total += e.prob;
  }
  // Re-normalize so rounding in the source cannot trip the sum check.
  for (Entry& e : mapped) e.prob /= total;
  return FromEntries(std::move(mapped));
}

}  // namespace mase
