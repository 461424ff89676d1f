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

#ifndef MASE_COMMON_H_
#define MASE_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mase {

// A pure joint action: one action index per player.
using JointAction = std::vector<int>;

// Absolute tolerance used for every equality and sign check on game values.
inline constexpr double kTolerance = 1e-9;

// Malformed input: unknown names, bad files, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or allocation would exceed the configured size cap.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size caps for dense enumeration. Every cap can be lowered or raised with
// the MASE_SIZE_CAP environment variable, which overrides `joint_actions`,
// `deviations`, `lp_columns` and `lp_rows` at once.
struct SizeCaps {
  std::int64_t joint_actions = 10'000'000;
  std::int64_t deviations = 10'000'000;
  std::int64_t coalitions = 100'000;
  std::int64_t lp_columns = 100'000;
  std::int64_t lp_rows = 100'000;

  static SizeCaps FromEnvironment();
};

// Product of `sizes`, saturating at `limit + 1` so callers can compare
// against a cap without overflow.
std::int64_t SaturatingProduct(const std::vector<int>& sizes,
                               std::int64_t limit);

}  // namespace mase

#endif  // MASE_COMMON_H_
