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

#ifndef MASE_BASELINES_H_
#define MASE_BASELINES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mase/coalitions.h"
#include "mase/common.h"
#include "mase/distribution.h"
#include "mase/game.h"
#include "mase/metrics.h"
#include "mase/structure.h"

namespace mase {

// Independent per-player no-regret learners. Hedge, FTRL and OMD react to
// exact expected utilities against the other players' current mixed
// strategies; FTPL plays perturbed best responses to realized pure actions.
enum class BaselineAlgorithm { kHedge, kFtrl, kOmd, kFtpl };

BaselineAlgorithm ParseBaselineAlgorithm(std::string_view name);
std::string BaselineName(BaselineAlgorithm algorithm);

struct BaselineConfig {
  BaselineAlgorithm algorithm = BaselineAlgorithm::kHedge;
  int horizon = 10000;
  double eta = 0.01;
  std::uint64_t seed = 0;
  // Same convention as SolverConfig::record_every.
  int record_every = 0;
  SizeCaps caps = SizeCaps::FromEnvironment();

  int RecordInterval() const;
};

struct BaselineResult {
  // Time average of the joint play: the product distributions for
  // Hedge/FTRL/OMD, empirical joint action frequencies for FTPL.
  SparseDistribution average_strategy;
  std::vector<MetricsRow> metrics;
  // Final mixed strategy of each player (one-hot for FTPL).
  std::vector<std::vector<double>> final_strategies;
  // Per-player external regret after the last step.
  std::vector<double> external_regret;
};

// Runs the learners for `horizon` steps. Metrics measure coalition
// exploitability against `metric_coalitions`; correlator_regret holds the
// largest per-player external regret and deviator_regret is NaN.
BaselineResult RunBaseline(const Game& game, const BaselineConfig& config,
                           const CoalitionSet& metric_coalitions,
                           const TreeDecomposition* td = nullptr);

// Euclidean projection onto the probability simplex (sorted threshold).
std::vector<double> ProjectOntoSimplex(std::span<const double> v);

}  // namespace mase

#endif  // MASE_BASELINES_H_
