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

#include "mase/common.h"

#include <cstdlib>
#include <string>

namespace mase {

SizeCaps SizeCaps::FromEnvironment() {
  SizeCaps caps;
  if (const char* env = std::getenv("MASE_SIZE_CAP"); env && *env) {
    char* end = nullptr;
    const long long value = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || value <= 0) {
      throw InputError("MASE_SIZE_CAP must be a positive integer, got '" +
                       std::string(env) + "'");
    }
    caps.joint_actions = value;
    caps.deviations = value;
    caps.lp_columns = value;
    caps.lp_rows = value;
  }
  return caps;
}

std::int64_t SaturatingProduct(const std::vector<int>& sizes,
                               std::int64_t limit) {
  std::int64_t product = 1;
  for (int size : sizes) {
    if (size == 0) return 0;
    if (product > limit / size) return limit + 1;
    product *= size;
  }
  return product;
}

}  // namespace mase
