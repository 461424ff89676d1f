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

#ifndef MASE_TREE_DP_H_
#define MASE_TREE_DP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mase/common.h"
#include "mase/structure.h"

namespace mase {

enum class Sense { kMinimize, kMaximize };

// Precomputed indexing for dynamic programming over a tree decomposition.
//
// Each player j ranges over a domain {0, ..., domain[j] - 1}; a domain of
// size 1 pins the player. A bag's local actions are indexed
// lexicographically over its sorted members, first member most significant.
// All per-bag tables are stored back to back in one flat array, bag b
// starting at Offset(b).
class DpPlan {
 public:
  DpPlan(const TreeDecomposition& td, std::vector<int> domain);

  const TreeDecomposition& Decomposition() const { return td_; }
  const std::vector<int>& Domain() const { return domain_; }
  int NumBags() const { return td_.NumBags(); }
  std::int64_t BagSize(int bag) const { return bag_size_[bag]; }
  std::int64_t Offset(int bag) const { return offset_[bag]; }
  std::int64_t TotalSize() const { return total_size_; }

  std::int64_t LocalIndex(int bag, std::span<const int> joint) const;
  // Writes the bag members' coordinates of `local` into `joint`.
  void Decode(int bag, std::int64_t local, std::span<int> joint) const;

  struct Result {
    double value = 0.0;
    JointAction assignment;  // one entry per player
  };

  // Reusable buffers so repeated solves do not allocate.
  struct Workspace {
    std::vector<double> values;
    std::vector<double> messages;
    std::vector<std::int64_t> best_child;
    std::vector<std::int64_t> chosen;
  };

  // Optimizes sum over bags of score(B, a_B) -/+ noise(B, a_B) over all
  // joint actions: for kMinimize noise is subtracted, for kMaximize added.
  // Empty spans stand for all-zero tables. Children are aggregated
  // leaves-to-root and the optimum is reconstructed root-to-leaves; ties go
  // to the lowest local index.
  Result Optimize(std::span<const double> scores, Sense sense,
                  std::span<const double> noise, Workspace& workspace) const;
  Result Optimize(std::span<const double> scores, Sense sense,
                  std::span<const double> noise = {}) const;

 private:
  TreeDecomposition td_;
  std::vector<int> domain_;
  std::vector<std::int64_t> bag_size_;
  std::vector<std::int64_t> offset_;
  std::int64_t total_size_ = 0;
  std::vector<std::vector<std::int64_t>> strides_;
  // For every non-root bag c with parent p: the separator index of each
  // local action of c and of each local action of p.
  std::vector<std::int64_t> separator_size_;
  std::vector<std::int64_t> message_offset_;
  std::int64_t total_messages_ = 0;
  std::vector<std::vector<std::int64_t>> child_to_separator_;
  std::vector<std::vector<std::int64_t>> parent_to_separator_;
};

}  // namespace mase

#endif  // MASE_TREE_DP_H_
