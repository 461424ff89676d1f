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

#include "mase/tree_dp.h"

#include <algorithm>
#include <limits>
#include <string>

namespace mase {

DpPlan::DpPlan(const TreeDecomposition& td, std::vector<int> domain)
    : td_(td), domain_(std::move(domain)) {
  constexpr std::int64_t kMaxTable = std::int64_t{1} << 31;
  const int k = td_.NumBags();
  bag_size_.resize(k);
  offset_.resize(k);
  strides_.resize(k);
  for (int b = 0; b < k; ++b) {
    const std::vector<int>& bag = td_.Bag(b);
    std::vector<int> sizes;
    for (int v : bag) {
      if (v >= static_cast<int>(domain_.size())) {
        throw InputError("bag " + std::to_string(b) + " names player " +
                         std::to_string(v) + " outside the game");
      }
      if (domain_[v] < 1) throw InputError("player domains must be >= 1");
      sizes.push_back(domain_[v]);
    }
    bag_size_[b] = SaturatingProduct(sizes, kMaxTable);
    if (bag_size_[b] > kMaxTable) {
      throw CapError("bag " + std::to_string(b) +
                     " has too many local joint actions");
    }
    strides_[b].assign(bag.size(), 1);
    for (int m = static_cast<int>(bag.size()) - 2; m >= 0; --m) {
      strides_[b][m] = strides_[b][m + 1] * sizes[m + 1];
    }
    offset_[b] = total_size_;
    total_size_ += bag_size_[b];
    if (total_size_ > kMaxTable) {
      throw CapError("dynamic-programming tables exceed the size limit");
    }
  }

  separator_size_.assign(k, 0);
  message_offset_.assign(k, 0);
  child_to_separator_.resize(k);
  parent_to_separator_.resize(k);
  std::vector<int> joint(domain_.size(), 0);
  for (int c = 0; c < k; ++c) {
    const int p = td_.Parent(c);
    if (p < 0) continue;
    std::vector<int> separator;
    std::set_intersection(td_.Bag(c).begin(), td_.Bag(c).end(),
                          td_.Bag(p).begin(), td_.Bag(p).end(),
                          std::back_inserter(separator));
    std::vector<std::int64_t> sep_stride(separator.size(), 1);
    for (int m = static_cast<int>(separator.size()) - 2; m >= 0; --m) {
      sep_stride[m] = sep_stride[m + 1] * domain_[separator[m + 1]];
    }
    separator_size_[c] =
        separator.empty() ? 1 : sep_stride[0] * domain_[separator[0]];
    message_offset_[c] = total_messages_;
    total_messages_ += separator_size_[c];
    auto separator_index = [&]() {
      std::int64_t s = 0;
      for (std::size_t m = 0; m < separator.size(); ++m) {
        s += joint[separator[m]] * sep_stride[m];
      }
      return s;
    };
    child_to_separator_[c].resize(bag_size_[c]);
    for (std::int64_t idx = 0; idx < bag_size_[c]; ++idx) {
      Decode(c, idx, joint);
      child_to_separator_[c][idx] = separator_index();
    }
    parent_to_separator_[c].resize(bag_size_[p]);
    for (std::int64_t idx = 0; idx < bag_size_[p]; ++idx) {
      Decode(p, idx, joint);
      parent_to_separator_[c][idx] = separator_index();
    }
  }
}

std::int64_t DpPlan::LocalIndex(int bag, std::span<const int> joint) const {
  std::int64_t idx = 0;
  const std::vector<int>& members = td_.Bag(bag);
  for (std::size_t m = 0; m < members.size(); ++m) {
    idx += joint[members[m]] * strides_[bag][m];
  }
  return idx;
}

void DpPlan::Decode(int bag, std::int64_t local, std::span<int> joint) const {
  const std::vector<int>& members = td_.Bag(bag);
  for (std::size_t m = 0; m < members.size(); ++m) {
    joint[members[m]] = static_cast<int>(local / strides_[bag][m]);
    local %= strides_[bag][m];
  }
}

DpPlan::Result DpPlan::Optimize(std::span<const double> scores, Sense sense,
                                std::span<const double> noise) const {
  Workspace workspace;
  return Optimize(scores, sense, noise, workspace);
}

DpPlan::Result DpPlan::Optimize(std::span<const double> scores, Sense sense,
                                std::span<const double> noise,
                                Workspace& workspace) const {
  const bool minimize = sense == Sense::kMinimize;
  auto better = [minimize](double a, double b) {
    return minimize ? a < b : a > b;
  };
  const double worst = minimize ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();

  std::vector<double>& values = workspace.values;
  if (scores.empty()) {
    values.assign(total_size_, 0.0);
  } else {
    values.assign(scores.begin(), scores.end());
  }
  if (!noise.empty()) {
    if (minimize) {
      for (std::int64_t i = 0; i < total_size_; ++i) values[i] -= noise[i];
    } else {
      for (std::int64_t i = 0; i < total_size_; ++i) values[i] += noise[i];
    }
  }

  workspace.messages.assign(total_messages_, worst);
  workspace.best_child.assign(total_messages_, -1);
  const int root = td_.Root();
  for (int c : td_.PostOrder()) {
    if (c == root) continue;
    const int p = td_.Parent(c);
    double* message = workspace.messages.data() + message_offset_[c];
    std::int64_t* best = workspace.best_child.data() + message_offset_[c];
    const double* child_values = values.data() + offset_[c];
    const std::vector<std::int64_t>& to_sep = child_to_separator_[c];
    for (std::int64_t idx = 0; idx < bag_size_[c]; ++idx) {
      const std::int64_t s = to_sep[idx];
      if (better(child_values[idx], message[s])) {
        message[s] = child_values[idx];
        best[s] = idx;
      }
    }
    double* parent_values = values.data() + offset_[p];
    const std::vector<std::int64_t>& from_parent = parent_to_separator_[c];
    for (std::int64_t idx = 0; idx < bag_size_[p]; ++idx) {
      parent_values[idx] += message[from_parent[idx]];
    }
  }

  Result result;
  result.value = worst;
  std::vector<std::int64_t>& chosen = workspace.chosen;
  chosen.assign(td_.NumBags(), 0);
  const double* root_values = values.data() + offset_[root];
  for (std::int64_t idx = 0; idx < bag_size_[root]; ++idx) {
    if (better(root_values[idx], result.value)) {
      result.value = root_values[idx];
      chosen[root] = idx;
    }
  }
  const std::vector<int>& post = td_.PostOrder();
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    const int c = *it;
    if (c == root) continue;
    const std::int64_t s = parent_to_separator_[c][chosen[td_.Parent(c)]];
    chosen[c] = workspace.best_child[message_offset_[c] + s];
  }
  result.assignment.assign(domain_.size(), 0);
  for (int b = 0; b < td_.NumBags(); ++b) {
    Decode(b, chosen[b], result.assignment);
  }
  return result;
}

}  // namespace mase
