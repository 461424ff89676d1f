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

#include "mase/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mase {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kRatioTieTolerance = 1e-12;
constexpr double kPhaseOneTolerance = 1e-7;
constexpr int kDegenerateRunLimit = 50;
constexpr std::int64_t kMaxTableauEntries = 200'000'000;

class Tableau {
 public:
  Tableau(int rows, int columns)
      : rows_(rows), columns_(columns), width_(columns + 1),
        a_(static_cast<std::size_t>(rows + 1) * width_, 0.0),
        basis_(rows, -1) {}

  double& At(int r, int c) { return a_[static_cast<std::size_t>(r) * width_ + c]; }
  double& Rhs(int r) { return At(r, columns_); }
  // The objective row is stored after the constraint rows.
  double& Cost(int c) { return At(rows_, c); }
  int& Basis(int r) { return basis_[r]; }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / At(pr, pc);
    for (int c = 0; c < width_; ++c) At(pr, c) *= inv;
    At(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = At(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c < width_; ++c) At(r, c) -= factor * At(pr, c);
      At(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Loads reduced costs for `cost` given the current basis.
  void PriceOut(const std::vector<double>& cost) {
    for (int c = 0; c < width_; ++c) Cost(c) = c < columns_ ? cost[c] : 0.0;
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (int c = 0; c < width_; ++c) Cost(c) -= cb * At(r, c);
    }
  }

  // Enters the lowest-index improving column over [0, allowed). Ratio ties
  // go to the largest pivot element until a run of degenerate pivots, then
  // to the lowest basic index (Bland). Returns false if unbounded.
  bool Optimize(int allowed, int& pivots) {
    int degenerate_run = 0;
    while (true) {
      int enter = -1;
      for (int c = 0; c < allowed; ++c) {
        if (Cost(c) < -kPivotTolerance) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      const bool bland = degenerate_run >= kDegenerateRunLimit;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double coefficient = At(r, enter);
        if (coefficient <= kPivotTolerance) continue;
        const double ratio = std::max(0.0, Rhs(r)) / coefficient;
        bool take = ratio < best - kRatioTieTolerance;
        if (!take && leave >= 0 && ratio <= best + kRatioTieTolerance) {
          take = bland ? basis_[r] < basis_[leave]
                       : coefficient > At(leave, enter);
        }
        if (take) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave < 0) return false;
      degenerate_run = best <= kRatioTieTolerance ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      ++pivots;
    }
  }

  int rows() const { return rows_; }

 private:
  int rows_;
  int columns_;
  int width_;
  std::vector<double> a_;
  std::vector<int> basis_;
};

// Joint actions of `game`, flat-indexed lexicographically, with every
// player's utility cached.
struct JointTable {
  std::int64_t size = 0;
  std::vector<std::int64_t> strides;
  std::vector<JointAction> actions;
  std::vector<std::vector<double>> utility;  // [player][flat]

  JointTable(const Game& game, const SizeCaps& caps) {
    const int n = game.NumPlayers();
    size = game.NumJointActions(caps.lp_columns);
    if (size > caps.lp_columns) {
      throw CapError("joint action space exceeds the LP column cap of " +
                     std::to_string(caps.lp_columns));
    }
    strides.assign(n, 1);
    for (int i = n - 2; i >= 0; --i) {
      strides[i] = strides[i + 1] * game.NumActions(i + 1);
    }
    utility.assign(n, std::vector<double>(size));
    JointAction a(n, 0);
    for (std::int64_t idx = 0; idx < size; ++idx) {
      actions.push_back(a);
      for (int i = 0; i < n; ++i) utility[i][idx] = game.Utility(i, a);
      int i = n - 1;
      while (i >= 0 && ++a[i] == game.NumActions(i)) a[i--] = 0;
    }
  }
};

// Appends one "gain <= rhs" row per deviation of each term; `extra` columns
// (zero-padded) follow the joint-action columns, and `w_columns` selects
// whether -w+ + w- is attached.
void AddGainRows(const Game& game, const JointTable& table,
                 const CoalitionSet& coalitions,
                 const std::vector<GainTerm>& terms, bool w_columns,
                 double rhs, int total_columns, const SizeCaps& caps,
                 DenseLp& lp) {
  for (const GainTerm& term : terms) {
    const std::vector<int>& members = coalitions[term.coalition].members;
    std::vector<int> deviation(members.size(), 0);
    while (true) {
      if (lp.NumRows() >= caps.lp_rows) {
        throw CapError("LP row count exceeds the cap of " +
                       std::to_string(caps.lp_rows));
      }
      std::vector<double> row(total_columns, 0.0);
      for (std::int64_t idx = 0; idx < table.size; ++idx) {
        std::int64_t deviated = idx;
        const JointAction& a = table.actions[idx];
        for (std::size_t m = 0; m < members.size(); ++m) {
          deviated += (deviation[m] - a[members[m]]) * table.strides[members[m]];
        }
        double gain = 0.0;
        for (int i : term.gain_players) {
          gain += table.utility[i][deviated] - table.utility[i][idx];
        }
        row[idx] = term.coefficient * gain;
      }
      if (w_columns) {
        row[table.size] = -1.0;
        row[table.size + 1] = 1.0;
      }
      lp.AddRow(std::move(row), RowSense::kLessEqual, rhs);
      int m = static_cast<int>(members.size()) - 1;
      while (m >= 0 && ++deviation[m] == game.NumActions(members[m])) {
        deviation[m--] = 0;
      }
      if (m < 0) break;
    }
  }
}

void AddSimplexRow(const JointTable& table, int total_columns, DenseLp& lp) {
  std::vector<double> row(total_columns, 0.0);
  std::fill(row.begin(), row.begin() + table.size, 1.0);
  lp.AddRow(std::move(row), RowSense::kEqual, 1.0);
}

SparseDistribution ExtractStrategy(const JointTable& table,
                                   const std::vector<double>& x) {
  std::vector<SparseDistribution::Entry> entries;
  double total = 0.0;
  for (std::int64_t idx = 0; idx < table.size; ++idx) {
    if (x[idx] > 1e-12) total += x[idx];
  }
  for (std::int64_t idx = 0; idx < table.size; ++idx) {
    if (x[idx] > 1e-12) entries.push_back({table.actions[idx], x[idx] / total});
  }
  return SparseDistribution::FromEntries(std::move(entries));
}

LpStrategy SolveCoalitionLp(const Game& game, const CoalitionSet& coalitions,
                            Objective objective, bool cce,
                            const SizeCaps& caps) {
  coalitions.Validate(game);
  if (coalitions.empty()) throw InputError("the coalition set is empty");
  const JointTable table(game, caps);
  const int columns = static_cast<int>(table.size) + 2;
  DenseLp lp;
  lp.objective.assign(columns, 0.0);
  lp.objective[table.size] = 1.0;
  lp.objective[table.size + 1] = -1.0;
  AddGainRows(game, table, coalitions, ExpandTerms(coalitions, objective),
              true, 0.0, columns, caps, lp);
  if (cce) {
    const CoalitionSet singletons = Singletons(game.NumPlayers());
    AddGainRows(game, table, singletons,
                ExpandTerms(singletons, Objective::kAverage), false, 0.0,
                columns, caps, lp);
  }
  AddSimplexRow(table, columns, lp);
  const LpSolution solution = SolveLp(lp, caps);
  if (solution.status != LpStatus::kOptimal) {
    throw InputError(std::string("coalition LP is ") +
                     (solution.status == LpStatus::kInfeasible ? "infeasible"
                                                               : "unbounded"));
  }
  return {solution.value, ExtractStrategy(table, solution.x)};
}

}  // namespace

void DenseLp::AddRow(std::vector<double> coefficients, RowSense sense,
                     double b) {
  rows.push_back(std::move(coefficients));
  senses.push_back(sense);
  rhs.push_back(b);
}

LpSolution SolveLp(const DenseLp& lp, const SizeCaps& caps) {
  const int n = lp.NumColumns();
  const int m = lp.NumRows();
  if (n > caps.lp_columns + 2 || m > caps.lp_rows + 1) {
    throw CapError("linear program exceeds the column or row cap");
  }
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.size()) != n) {
      throw InputError("LP row width does not match the objective");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw InputError("LP entries must be finite");
    }
  }
  // Normalize to non-negative right-hand sides.
  std::vector<RowSense> senses = lp.senses;
  std::vector<double> sign(m, 1.0);
  int slacks = 0;
  int artificials = 0;
  for (int r = 0; r < m; ++r) {
    if (lp.rhs[r] < 0.0) {
      sign[r] = -1.0;
      if (senses[r] == RowSense::kLessEqual) {
        senses[r] = RowSense::kGreaterEqual;
      } else if (senses[r] == RowSense::kGreaterEqual) {
        senses[r] = RowSense::kLessEqual;
      }
    }
    if (senses[r] != RowSense::kEqual) ++slacks;
    if (senses[r] != RowSense::kLessEqual) ++artificials;
  }
  const int total = n + slacks + artificials;
  if (static_cast<std::int64_t>(m + 1) * (total + 1) > kMaxTableauEntries) {
    throw CapError("simplex tableau would exceed the memory cap");
  }
  Tableau tableau(m, total);
  int next_slack = n;
  int next_artificial = n + slacks;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) tableau.At(r, c) = sign[r] * lp.rows[r][c];
    tableau.Rhs(r) = sign[r] * lp.rhs[r];
    if (senses[r] == RowSense::kLessEqual) {
      tableau.At(r, next_slack) = 1.0;
      tableau.Basis(r) = next_slack++;
    } else {
      if (senses[r] == RowSense::kGreaterEqual) {
        tableau.At(r, next_slack++) = -1.0;
      }
      tableau.At(r, next_artificial) = 1.0;
      tableau.Basis(r) = next_artificial++;
    }
  }

  LpSolution solution;
  const int first_artificial = n + slacks;
  if (artificials > 0) {
    std::vector<double> phase_one(total, 0.0);
    for (int c = first_artificial; c < total; ++c) phase_one[c] = 1.0;
    tableau.PriceOut(phase_one);
    tableau.Optimize(total, solution.pivots);
    if (-tableau.Cost(total) > kPhaseOneTolerance) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    // Pivot remaining zero-level artificials out where possible; rows where
    // that fails are redundant and stay inert.
    for (int r = 0; r < m; ++r) {
      if (tableau.Basis(r) < first_artificial) continue;
      for (int c = 0; c < first_artificial; ++c) {
        if (std::abs(tableau.At(r, c)) > kPivotTolerance) {
          tableau.Pivot(r, c);
          ++solution.pivots;
          break;
        }
      }
    }
  }
  std::vector<double> cost(total, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  tableau.PriceOut(cost);
  if (!tableau.Optimize(first_artificial, solution.pivots)) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  solution.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (tableau.Basis(r) < n) {
      solution.x[tableau.Basis(r)] = std::max(0.0, tableau.Rhs(r));
    }
  }
  solution.value = 0.0;
  for (int c = 0; c < n; ++c) solution.value += lp.objective[c] * solution.x[c];
  return solution;
}

LpStrategy LpMase(const Game& game, const CoalitionSet& coalitions,
                  Objective objective, const SizeCaps& caps) {
  return SolveCoalitionLp(game, coalitions, objective, false, caps);
}

LpStrategy LpMaseMaxWelfare(const Game& game, const CoalitionSet& coalitions,
                            Objective objective, const SizeCaps& caps) {
  const LpStrategy optimal = LpMase(game, coalitions, objective, caps);
  const JointTable table(game, caps);
  const int columns = static_cast<int>(table.size);
  DenseLp lp;
  lp.objective.assign(columns, 0.0);
  for (std::int64_t idx = 0; idx < table.size; ++idx) {
    for (int i = 0; i < game.NumPlayers(); ++i) {
      lp.objective[idx] -= table.utility[i][idx];
    }
  }
  AddGainRows(game, table, coalitions, ExpandTerms(coalitions, objective),
              false, optimal.value + kTolerance, columns, caps, lp);
  AddSimplexRow(table, columns, lp);
  const LpSolution solution = SolveLp(lp, caps);
  if (solution.status != LpStatus::kOptimal) return optimal;
  return {optimal.value, ExtractStrategy(table, solution.x)};
}

LpStrategy LpOptimalCce(const Game& game, const CoalitionSet& coalitions,
                        Objective objective, const SizeCaps& caps) {
  return SolveCoalitionLp(game, coalitions, objective, true, caps);
}

LpStrategy LpWelfareUnderBudget(const Game& game, double epsilon,
                                const SizeCaps& caps) {
  if (!std::isfinite(epsilon)) throw InputError("epsilon must be finite");
  const JointTable table(game, caps);
  const int columns = static_cast<int>(table.size);
  DenseLp lp;
  lp.objective.assign(columns, 0.0);
  for (std::int64_t idx = 0; idx < table.size; ++idx) {
    for (int i = 0; i < game.NumPlayers(); ++i) {
      lp.objective[idx] -= table.utility[i][idx];
    }
  }
  const CoalitionSet singletons = Singletons(game.NumPlayers());
  AddGainRows(game, table, singletons,
              ExpandTerms(singletons, Objective::kAverage), false, epsilon,
              columns, caps, lp);
  AddSimplexRow(table, columns, lp);
  const LpSolution solution = SolveLp(lp, caps);
  if (solution.status != LpStatus::kOptimal) {
    throw InputError("no strategy has exploitability <= " +
                     std::to_string(epsilon));
  }
  return {-solution.value, ExtractStrategy(table, solution.x)};
}

double MaxWelfare(const Game& game, const SizeCaps& caps) {
  if (game.NumJointActions(caps.joint_actions) > caps.joint_actions) {
    throw CapError("joint action space exceeds the enumeration cap");
  }
  double best = -std::numeric_limits<double>::infinity();
  JointAction a(game.NumPlayers(), 0);
  while (true) {
    double welfare = 0.0;
    for (int i = 0; i < game.NumPlayers(); ++i) welfare += game.Utility(i, a);
    best = std::max(best, welfare);
    int i = game.NumPlayers() - 1;
    while (i >= 0 && ++a[i] == game.NumActions(i)) a[i--] = 0;
    if (i < 0) break;
  }
  return best;
}

}  // namespace mase
