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

#include "mase/evaluator.h"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mase/tree_dp.h"

namespace mase {
namespace {

bool Contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

GainTerm TermForAtom(const Game& game, const CoalitionSet& coalitions,
                     Objective objective, const DeviatorAtom& atom) {
  if (atom.coalition < 0 || atom.coalition >= coalitions.size()) {
    throw InputError("deviator atom names coalition " +
                     std::to_string(atom.coalition) +
                     " which is not in the coalition set");
  }
  const Coalition& c = coalitions[atom.coalition];
  if (atom.deviation.size() != c.members.size()) {
    throw InputError("deviation length does not match the coalition size");
  }
  for (std::size_t m = 0; m < c.members.size(); ++m) {
    const int a = atom.deviation[m];
    if (a < 0 || a >= game.NumActions(c.members[m])) {
      throw InputError("deviation action out of range");
    }
  }
  GainTerm term;
  term.coalition = atom.coalition;
  switch (objective) {
    case Objective::kAverage:
    case Objective::kWeighted:
      if (atom.target != -1) {
        throw InputError("deviator targets are only used by the maximum "
                         "objective");
      }
      term.coefficient = (objective == Objective::kAverage ? 1.0 : c.weight) /
                         c.divisor;
      term.gain_players = c.members;
      break;
    case Objective::kMaximum:
      if (!Contains(c.members, atom.target)) {
        throw InputError("deviator target must belong to its coalition");
      }
      term.target = atom.target;
      term.coefficient = c.weight;
      term.gain_players = {atom.target};
      break;
  }
  return term;
}

// Expected gain of `term` when its coalition plays `deviation`.
double TermValue(const Game& game, const SparseDistribution& pi,
                 const CoalitionSet& coalitions, const GainTerm& term,
                 const std::vector<int>& deviation, JointAction& scratch) {
  const std::vector<int>& members = coalitions[term.coalition].members;
  double total = 0.0;
  for (const auto& entry : pi.Entries()) {
    scratch = entry.action;
    for (std::size_t m = 0; m < members.size(); ++m) {
      scratch[members[m]] = deviation[m];
    }
    double gain = 0.0;
    for (int i : term.gain_players) {
      gain += game.Utility(i, scratch) - game.Utility(i, entry.action);
    }
    total += entry.prob * gain;
  }
  return term.coefficient * total;
}

// Adds coefficient * (E[U_i(a'_{S}, a_{-S})] - E[U_i(a)]) to every local
// action a' of `bag` in `scores`, reading deviations from the plan's domain.
void AddGainTable(const Game& game, const SparseDistribution& pi,
                  const std::vector<int>& members, int player,
                  double coefficient, const DpPlan& plan, int bag,
                  std::vector<double>& scores) {
  const std::vector<int>& neighborhood = game.Neighborhood(player);
  std::vector<int> outside;
  for (int j : neighborhood) {
    if (!Contains(members, j)) outside.push_back(j);
  }
  // Marginal of pi on the non-deviating part of N(i).
  std::map<std::vector<int>, double> marginal;
  double baseline = 0.0;
  std::vector<int> key(outside.size());
  for (const auto& entry : pi.Entries()) {
    for (std::size_t m = 0; m < outside.size(); ++m) {
      key[m] = entry.action[outside[m]];
    }
    marginal[key] += entry.prob;
    baseline += entry.prob * game.Utility(player, entry.action);
  }
  JointAction joint(game.NumPlayers(), 0);
  double* table = scores.data() + plan.Offset(bag);
  for (std::int64_t idx = 0; idx < plan.BagSize(bag); ++idx) {
    plan.Decode(bag, idx, joint);
    double expected = 0.0;
    for (const auto& [values, prob] : marginal) {
      for (std::size_t m = 0; m < outside.size(); ++m) {
        joint[outside[m]] = values[m];
      }
      expected += prob * game.Utility(player, joint);
    }
    table[idx] += coefficient * (expected - baseline);
  }
}

}  // namespace

double SocialWelfare(const Game& game, const SparseDistribution& pi) {
  pi.Validate(game);
  double welfare = 0.0;
  for (const auto& entry : pi.Entries()) {
    double sum = 0.0;
    for (int i = 0; i < game.NumPlayers(); ++i) {
      sum += game.Utility(i, entry.action);
    }
    welfare += entry.prob * sum;
  }
  return welfare;
}

double Exploitability(const Game& game, const SparseDistribution& pi) {
  pi.Validate(game);
  double best = -std::numeric_limits<double>::infinity();
  JointAction scratch;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    double current = 0.0;
    for (const auto& entry : pi.Entries()) {
      current += entry.prob * game.Utility(i, entry.action);
    }
    for (int a = 0; a < game.NumActions(i); ++a) {
      double deviated = 0.0;
      for (const auto& entry : pi.Entries()) {
        scratch = entry.action;
        scratch[i] = a;
        deviated += entry.prob * game.Utility(i, scratch);
      }
      best = std::max(best, deviated - current);
    }
  }
  return best;
}

double CoalitionGain(const Game& game, const SparseDistribution& pi,
                     const CoalitionSet& coalitions, Objective objective,
                     const DeviatorAtom& atom) {
  pi.Validate(game);
  coalitions.Validate(game);
  const GainTerm term = TermForAtom(game, coalitions, objective, atom);
  JointAction scratch;
  return TermValue(game, pi, coalitions, term, atom.deviation, scratch);
}

double MetaPayoff(const Game& game, const SparseDistribution& pi,
                  const DeviatorMixture& mu, const CoalitionSet& coalitions,
                  Objective objective) {
  double total = 0.0;
  for (const auto& [atom, prob] : mu) {
    total += prob * CoalitionGain(game, pi, coalitions, objective, atom);
  }
  return total;
}

BestDeviation CoalitionExploitabilityBruteForce(const Game& game,
                                                const SparseDistribution& pi,
                                                const CoalitionSet& coalitions,
                                                Objective objective,
                                                const SizeCaps& caps) {
  pi.Validate(game);
  coalitions.Validate(game);
  if (coalitions.DeviationSpaceSize(game, caps.deviations) > caps.deviations) {
    throw CapError(
        "coalition deviation space exceeds the enumeration cap; use the "
        "dynamic-programming evaluator with a tree decomposition");
  }
  BestDeviation best;
  best.value = -std::numeric_limits<double>::infinity();
  JointAction scratch;
  for (const GainTerm& term : ExpandTerms(coalitions, objective)) {
    const std::vector<int>& members = coalitions[term.coalition].members;
    std::vector<int> deviation(members.size(), 0);
    while (true) {
      const double value =
          TermValue(game, pi, coalitions, term, deviation, scratch);
      if (value > best.value) {
        best.value = value;
        best.atom = {term.coalition, deviation, term.target};
      }
      int m = static_cast<int>(members.size()) - 1;
      while (m >= 0 && ++deviation[m] == game.NumActions(members[m])) {
        deviation[m--] = 0;
      }
      if (m < 0) break;
    }
  }
  return best;
}

BestDeviation CoalitionExploitabilityDp(const Game& game,
                                        const SparseDistribution& pi,
                                        const CoalitionSet& coalitions,
                                        const TreeDecomposition& td,
                                        Objective objective) {
  pi.Validate(game);
  coalitions.Validate(game);
  if (auto violation =
          ValidateTreeDecomposition(td, BuildDependencyGraph(game))) {
    throw InputError("decomposition invalid: " + violation->message);
  }
  const std::vector<int> assignment = AssignPlayers(td, game);
  BestDeviation best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const GainTerm& term : ExpandTerms(coalitions, objective)) {
    const std::vector<int>& members = coalitions[term.coalition].members;
    std::vector<int> domain(game.NumPlayers(), 1);
    for (int j : members) domain[j] = game.NumActions(j);
    DpPlan plan(td, domain);
    std::vector<double> scores(plan.TotalSize(), 0.0);
    for (int i : term.gain_players) {
      AddGainTable(game, pi, members, i, term.coefficient, plan,
                   assignment[i], scores);
    }
    const DpPlan::Result result = plan.Optimize(scores, Sense::kMaximize);
    if (result.value > best.value) {
      best.value = result.value;
      std::vector<int> deviation;
      for (int j : members) deviation.push_back(result.assignment[j]);
      best.atom = {term.coalition, std::move(deviation), term.target};
    }
  }
  return best;
}

BestDeviation CoalitionExploitability(const Game& game,
                                      const SparseDistribution& pi,
                                      const CoalitionSet& coalitions,
                                      Objective objective,
                                      const TreeDecomposition* td,
                                      const SizeCaps& caps) {
  const std::int64_t deviations =
      coalitions.DeviationSpaceSize(game, caps.deviations);
  const std::int64_t support = std::max(1, pi.size());
  if (deviations <= caps.deviations / support) {
    return CoalitionExploitabilityBruteForce(game, pi, coalitions, objective,
                                             caps);
  }
  if (td != nullptr) {
    return CoalitionExploitabilityDp(game, pi, coalitions, *td, objective);
  }
  const TreeDecomposition heuristic =
      HeuristicTreeDecomposition(BuildDependencyGraph(game));
  return CoalitionExploitabilityDp(game, pi, coalitions, heuristic, objective);
}

bool IsMaseLeq0(const Game& game, const SparseDistribution& pi,
                const CoalitionSet& coalitions, const SizeCaps& caps) {
  return CoalitionExploitability(game, pi, coalitions, Objective::kWeighted,
                                 nullptr, caps)
             .value <= kTolerance;
}

}  // namespace mase
