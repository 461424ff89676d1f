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

#ifndef MASE_LP_H_
#define MASE_LP_H_

#include <vector>

#include "mase/coalitions.h"
#include "mase/common.h"
#include "mase/distribution.h"
#include "mase/game.h"

namespace mase {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// minimize objective . x  subject to  rows[r] . x (sense[r]) rhs[r], x >= 0.
struct DenseLp {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;

  int NumColumns() const { return static_cast<int>(objective.size()); }
  int NumRows() const { return static_cast<int>(rows.size()); }
  void AddRow(std::vector<double> coefficients, RowSense sense, double b);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double value = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

// Two-phase dense tableau simplex with a Bland's-rule fallback against
// cycling and an absolute pivot tolerance of 1e-9. Throws CapError above
// the caps.
LpSolution SolveLp(const DenseLp& lp,
                   const SizeCaps& caps = SizeCaps::FromEnvironment());

struct LpStrategy {
  double value = 0.0;
  SparseDistribution strategy;
};

// min_pi max over coalition terms and deviations of the weighted average
// gain (the coalition exploitability), as a linear program over all joint
// actions plus a free scalar.
LpStrategy LpMase(const Game& game, const CoalitionSet& coalitions,
                  Objective objective = Objective::kWeighted,
                  const SizeCaps& caps = SizeCaps::FromEnvironment());

// As LpMase, but among all optimal strategies returns one of maximum social
// welfare (a second LP over the optimal face).
LpStrategy LpMaseMaxWelfare(const Game& game, const CoalitionSet& coalitions,
                            Objective objective = Objective::kWeighted,
                            const SizeCaps& caps = SizeCaps::FromEnvironment());

// As LpMase, restricted to coarse correlated equilibria (every unilateral
// deviation gain <= 0).
LpStrategy LpOptimalCce(const Game& game, const CoalitionSet& coalitions,
                        Objective objective = Objective::kWeighted,
                        const SizeCaps& caps = SizeCaps::FromEnvironment());

// Maximum social welfare over strategies whose every unilateral deviation
// gain is at most `epsilon`. Throws InputError if infeasible.
LpStrategy LpWelfareUnderBudget(
    const Game& game, double epsilon,
    const SizeCaps& caps = SizeCaps::FromEnvironment());

// max over joint actions of the social welfare.
double MaxWelfare(const Game& game,
                  const SizeCaps& caps = SizeCaps::FromEnvironment());

}  // namespace mase

#endif  // MASE_LP_H_
