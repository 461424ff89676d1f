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

#ifndef MASE_RNG_H_
#define MASE_RNG_H_

#include <cstdint>

namespace mase {

// SplitMix64 (Steele, Lea & Flood 2014). Every random draw in the library
// goes through this generator so that generated games and solver runs are
// reproducible across platforms and languages:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// NextDouble() maps the top 53 bits to [0, 1): (z >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double NextDouble() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) as floor(NextDouble() * n).
  int NextInt(int n) {
    const int k = static_cast<int>(NextDouble() * n);
    return k < n ? k : n - 1;
  }

  // Exponential draw with rate `eta`: Pr(x >= w) = exp(-eta * w), computed
  // by inversion as -log(1 - u) / eta.
  double NextExponential(double eta);

  // Independent generator for a sub-stream, e.g. one per seed in a sweep.
  SplitMix64 Split() { return SplitMix64(Next()); }

 private:
  std::uint64_t state_;
};

}  // namespace mase

#endif  // MASE_RNG_H_
