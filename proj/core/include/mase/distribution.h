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

#ifndef MASE_DISTRIBUTION_H_
#define MASE_DISTRIBUTION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mase/common.h"
#include "mase/game.h"

namespace mase {

// A correlated joint strategy stored as a weighted list of pure joint
// actions. Entries are sorted lexicographically, duplicates merged and every
// probability is positive.
class SparseDistribution {
 public:
  struct Entry {
    JointAction action;
    double prob = 0.0;
  };

  SparseDistribution() = default;

  // Throws InputError on negative probabilities or a total that is not
  // 1 within kTolerance. Zero-probability entries are dropped.
  static SparseDistribution FromEntries(std::vector<Entry> entries);
  static SparseDistribution PointMass(JointAction action);
  // Empirical distribution of `counts`, each count divided by the total.
  static SparseDistribution FromCounts(
      const std::map<JointAction, std::int64_t>& counts);

  const std::vector<Entry>& Entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  // Throws InputError if an action is not a valid joint action of `game`.
  void Validate(const Game& game) const;

  SparseDistribution Map(
      const std::function<JointAction(const JointAction&)>& fn) const;

 private:
  std::vector<Entry> entries_;
};

// One pure action of the deviator: coalition `coalition` (an index into the
// coalition set) jointly plays `deviation`, aligned with the coalition's
// sorted members. `target` names the member whose gain counts in the
// maximum-objective variant and is -1 otherwise.
struct DeviatorAtom {
  int coalition = 0;
  std::vector<int> deviation;
  int target = -1;

  auto operator<=>(const DeviatorAtom&) const = default;
};

// A sparse mixture over deviator atoms.
using DeviatorMixture = std::vector<std::pair<DeviatorAtom, double>>;

}  // namespace mase

#endif  // MASE_DISTRIBUTION_H_
