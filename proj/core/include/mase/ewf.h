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

#ifndef MASE_EWF_H_
#define MASE_EWF_H_

#include <memory>
#include <string_view>
#include <vector>

#include "mase/distribution.h"
#include "mase/ftpl.h"
#include "mase/game.h"

namespace mase {

// Exploitability-welfare frontier: the best social welfare reachable by
// strategies whose exploitability is at most epsilon.

enum class EwfBackend { kLp, kFtpl };

EwfBackend ParseEwfBackend(std::string_view name);

struct WeightedSolve {
  double w = 0.0;
  double exploitability = 0.0;
  double welfare = 0.0;
  SparseDistribution strategy;
};

// Minimizes the weighted coalition exploitability with singletons weighted
// w and the grand coalition weighted 1 - w. The LP backend returns the
// welfare-maximal optimum; the FTPL backend returns the average strategy of
// SolveMase under `config`.
WeightedSolve WeightedMaseSolve(std::shared_ptr<const Game> game, double w,
                                EwfBackend backend, const SolverConfig& config);

struct EwfSearchResult {
  double welfare = 0.0;
  double w = 0.0;
  double exploitability = 0.0;
  // False when no bisection point met the budget and the result comes from
  // the final solve near w = 1.
  bool feasible = true;
  SparseDistribution strategy;
  std::vector<WeightedSolve> trace;
};

// Bisection on w in [0, 1] until the bracket is narrower than `eps_tol`.
// A point is feasible when its exploitability is <= epsilon (within
// kTolerance); the welfare of the last feasible point is returned.
EwfSearchResult EwfBinarySearch(std::shared_ptr<const Game> game,
                                double epsilon, double eps_tol,
                                EwfBackend backend, const SolverConfig& config);

struct FrontierPoint {
  double epsilon = 0.0;
  double welfare = 0.0;
  double w = 0.0;
  SparseDistribution strategy;
};

enum class SweepKind { kEpsilon, kWeight };

// kEpsilon: one binary search per budget, reported at the budget.
// kWeight: one weighted solve per w, reported at the attained
// exploitability. Points come back sorted by epsilon. Each point's solver
// seed is derived from config.seed and its index, so results do not depend
// on `jobs`.
std::vector<FrontierPoint> EwfSweep(std::shared_ptr<const Game> game,
                                    SweepKind kind,
                                    const std::vector<double>& values,
                                    EwfBackend backend,
                                    const SolverConfig& config, double eps_tol,
                                    int jobs = 1);

}  // namespace mase

#endif  // MASE_EWF_H_
