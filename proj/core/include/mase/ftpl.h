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

#ifndef MASE_FTPL_H_
#define MASE_FTPL_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mase/coalitions.h"
#include "mase/common.h"
#include "mase/distribution.h"
#include "mase/game.h"
#include "mase/metrics.h"
#include "mase/rng.h"
#include "mase/structure.h"
#include "mase/tree_dp.h"

namespace mase {

struct SolverConfig {
  int horizon = 10000;
  double eta = 0.01;
  std::uint64_t seed = 0;
  Objective objective = Objective::kWeighted;
  // Metrics are recorded every `record_every` steps and at the last step.
  // 0 means max(1, horizon / 100); a negative value disables recording.
  int record_every = 0;
  // Use eta = 1 / sqrt(horizon) instead of `eta`.
  bool theory_rate = false;
  // Drop all noise, turning both players into fictitious-play best
  // responders. Intended for tests.
  bool zero_noise = false;
  bool keep_history = true;
  SizeCaps caps = SizeCaps::FromEnvironment();

  double EffectiveEta() const;
  int RecordInterval() const;
};

// I.i.d. Exp(eta) draws, one per output slot.
void SampleExponentialNoise(double eta, SplitMix64& rng,
                            std::vector<double>& out);
std::vector<double> SampleExponentialNoise(double eta, std::int64_t count,
                                           SplitMix64& rng);

// Shared indexing for both meta-game players: the decomposition, the
// assignment of players to bags and a full-domain DP plan.
class MetaGameLayout {
 public:
  MetaGameLayout(std::shared_ptr<const Game> game, CoalitionSet coalitions,
                 TreeDecomposition td, Objective objective);

  const Game& GetGame() const { return *game_; }
  const CoalitionSet& Coalitions() const { return coalitions_; }
  const TreeDecomposition& Decomposition() const { return plan_.Decomposition(); }
  const std::vector<GainTerm>& Terms() const { return terms_; }
  const std::vector<int>& Assignment() const { return assignment_; }
  const DpPlan& Plan() const { return plan_; }
  Objective GetObjective() const { return objective_; }

  // F(a, atom) for a pure joint action and a pure deviator atom.
  double PurePayoff(std::span<const int> action, const DeviatorAtom& atom) const;
  // Index into Terms() of the term an atom belongs to.
  int TermIndex(const DeviatorAtom& atom) const;

 private:
  std::shared_ptr<const Game> game_;
  CoalitionSet coalitions_;
  Objective objective_;
  std::vector<GainTerm> terms_;
  std::vector<int> assignment_;
  DpPlan plan_;
};

// The minimizing player. Keeps c(B, a_B), the cumulative payoff of every
// local action against the deviator's past atoms.
class Correlator {
 public:
  explicit Correlator(const MetaGameLayout& layout);

  // Adds the payoff of every local action against `atom`, scaled by
  // `weight`.
  void Accumulate(const DeviatorAtom& atom, double weight = 1.0);
  // Minimizer of cumulative payoff minus `noise` (one entry per table slot;
  // empty for none).
  DpPlan::Result Respond(std::span<const double> noise);
  const std::vector<double>& Scores() const { return scores_; }

 private:
  const MetaGameLayout& layout_;
  std::vector<double> scores_;
  DpPlan::Workspace workspace_;
  JointAction scratch_;
};

// The maximizing player. Keeps one cumulative table per gain term.
class Deviator {
 public:
  explicit Deviator(const MetaGameLayout& layout);

  // Adds the gain of every local deviation against the pure action `action`.
  void Accumulate(std::span<const int> action, double weight = 1.0);

  struct Response {
    DeviatorAtom atom;
    double value = 0.0;
    int term = 0;
  };
  // Best response of one term plus `noise`; `assignment` covers all players.
  DpPlan::Result RespondTerm(int term, std::span<const double> noise);
  // Best atom across terms; noise[k] perturbs term k (empty for none). Ties
  // go to the lowest term.
  Response Respond(const std::vector<std::vector<double>>& noise);
  const std::vector<double>& Scores(int term) const { return scores_[term]; }

 private:
  const MetaGameLayout& layout_;
  std::vector<std::vector<double>> scores_;
  DpPlan::Workspace workspace_;
  JointAction scratch_;
};

struct SolveResult {
  SparseDistribution average_strategy;
  DeviatorMixture average_deviator;
  std::vector<MetricsRow> metrics;
  std::vector<JointAction> strategy_history;
  std::vector<DeviatorAtom> deviator_history;
  int horizon = 0;
  // sum_t F(a^t, atom^t).
  double realized_payoff = 0.0;
  double correlator_regret = 0.0;
  double deviator_regret = 0.0;
  // max_mu F(avg, mu) - min_pi F(pi, avg_mu) = (regrets) / T.
  double DualityGap() const;
};

// Fills exploitability, coalition exploitability and welfare of an average
// strategy in a metrics row.
using MetricsEvaluator =
    std::function<void(const SparseDistribution& average, MetricsRow& row)>;

// Runs T simultaneous FTPL steps of the correlator/deviator meta-game.
// Both players start from uniformly random pure strategies. With a null
// `evaluate`, metrics are measured on `game` itself.
SolveResult SolveMase(std::shared_ptr<const Game> game,
                      const CoalitionSet& coalitions,
                      const TreeDecomposition& td, const SolverConfig& config,
                      const MetricsEvaluator& evaluate = nullptr);

// Solves a polymatrix game through its edge-player form. Coalitions are over
// the original players; the returned strategy and metrics refer to the
// original game.
SolveResult SolveMasePolymatrix(std::shared_ptr<const PolymatrixGame> game,
                                const CoalitionSet& coalitions,
                                const SolverConfig& config);

struct Regrets {
  double correlator = 0.0;
  double deviator = 0.0;
};

// Best-fixed-action regrets of a pair of histories, recomputed from
// scratch with the evaluator: enumeration of joint actions for the
// correlator when they fit caps.joint_actions and a DP best response
// otherwise.
Regrets EmpiricalRegret(const Game& game, const CoalitionSet& coalitions,
                        Objective objective,
                        const std::vector<JointAction>& strategy_history,
                        const std::vector<DeviatorAtom>& deviator_history,
                        const TreeDecomposition* td = nullptr,
                        const SizeCaps& caps = SizeCaps::FromEnvironment());

// Uniform mixture over a pure history, duplicates merged.
SparseDistribution AverageOf(const std::vector<JointAction>& history);
DeviatorMixture AverageOf(const std::vector<DeviatorAtom>& history);

}  // namespace mase

#endif  // MASE_FTPL_H_
