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

#include "mase/ftpl.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "mase/evaluator.h"

namespace mase {
namespace {

std::vector<int> FullDomain(const Game& game) { return game.ActionCounts(); }

std::int64_t NextIndex(SplitMix64& rng, std::int64_t n) {
  const auto k = static_cast<std::int64_t>(rng.NextDouble() *
                                           static_cast<double>(n));
  return std::min(k, n - 1);
}

JointAction RandomJointAction(const Game& game, SplitMix64& rng) {
  JointAction a(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) {
    a[i] = rng.NextInt(game.NumActions(i));
  }
  return a;
}

DeviatorAtom RandomAtom(const MetaGameLayout& layout, SplitMix64& rng,
                        std::int64_t limit) {
  const Game& game = layout.GetGame();
  std::vector<std::int64_t> sizes;
  std::int64_t total = 0;
  for (const GainTerm& term : layout.Terms()) {
    std::vector<int> counts;
    for (int j : layout.Coalitions()[term.coalition].members) {
      counts.push_back(game.NumActions(j));
    }
    sizes.push_back(SaturatingProduct(counts, limit));
    total += sizes.back();
    if (total > limit) throw CapError("deviator action space exceeds the cap");
  }
  std::int64_t index = NextIndex(rng, total);
  int k = 0;
  while (index >= sizes[k]) index -= sizes[k++];
  const GainTerm& term = layout.Terms()[k];
  const std::vector<int>& members = layout.Coalitions()[term.coalition].members;
  DeviatorAtom atom{term.coalition, std::vector<int>(members.size()),
                    term.target};
  for (int m = static_cast<int>(members.size()) - 1; m >= 0; --m) {
    const int n = game.NumActions(members[m]);
    atom.deviation[m] = static_cast<int>(index % n);
    index /= n;
  }
  return atom;
}

}  // namespace

double SolverConfig::EffectiveEta() const {
  return theory_rate ? 1.0 / std::sqrt(static_cast<double>(horizon)) : eta;
}

int SolverConfig::RecordInterval() const {
  if (record_every < 0) return 0;
  if (record_every == 0) return std::max(1, horizon / 100);
  return record_every;
}

void SampleExponentialNoise(double eta, SplitMix64& rng,
                            std::vector<double>& out) {
  for (double& x : out) x = rng.NextExponential(eta);
}

std::vector<double> SampleExponentialNoise(double eta, std::int64_t count,
                                           SplitMix64& rng) {
  if (!(eta > 0.0)) throw InputError("noise rate eta must be positive");
  std::vector<double> out(count);
  SampleExponentialNoise(eta, rng, out);
  return out;
}

MetaGameLayout::MetaGameLayout(std::shared_ptr<const Game> game,
                               CoalitionSet coalitions, TreeDecomposition td,
                               Objective objective)
    : game_(std::move(game)),
      coalitions_(std::move(coalitions)),
      objective_(objective),
      terms_(ExpandTerms(coalitions_, objective)),
      assignment_(AssignPlayers(td, *game_)),
      plan_(td, FullDomain(*game_)) {
  coalitions_.Validate(*game_);
  if (coalitions_.empty()) throw InputError("the coalition set is empty");
  if (auto violation =
          ValidateTreeDecomposition(td, BuildDependencyGraph(*game_))) {
    throw InputError("decomposition invalid: " + violation->message);
  }
}

double MetaGameLayout::PurePayoff(std::span<const int> action,
                                  const DeviatorAtom& atom) const {
  const GainTerm& term = terms_[TermIndex(atom)];
  const std::vector<int>& members = coalitions_[atom.coalition].members;
  JointAction deviated(action.begin(), action.end());
  for (std::size_t m = 0; m < members.size(); ++m) {
    deviated[members[m]] = atom.deviation[m];
  }
  double gain = 0.0;
  for (int i : term.gain_players) {
    gain += game_->Utility(i, deviated) - game_->Utility(i, action);
  }
  return term.coefficient * gain;
}

int MetaGameLayout::TermIndex(const DeviatorAtom& atom) const {
  // Terms are grouped by coalition in coalition order.
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), atom.coalition,
      [](const GainTerm& t, int c) { return t.coalition < c; });
  for (; it != terms_.end() && it->coalition == atom.coalition; ++it) {
    if (it->target == atom.target) {
      return static_cast<int>(it - terms_.begin());
    }
  }
  throw InputError("deviator atom does not match any coalition term");
}

Correlator::Correlator(const MetaGameLayout& layout)
    : layout_(layout),
      scores_(layout.Plan().TotalSize(), 0.0),
      scratch_(layout.GetGame().NumPlayers(), 0) {}

void Correlator::Accumulate(const DeviatorAtom& atom, double weight) {
  const Game& game = layout_.GetGame();
  const DpPlan& plan = layout_.Plan();
  const GainTerm& term = layout_.Terms()[layout_.TermIndex(atom)];
  const std::vector<int>& members =
      layout_.Coalitions()[atom.coalition].members;
  const double coefficient = weight * term.coefficient;
  JointAction deviated(game.NumPlayers(), 0);
  for (int i : term.gain_players) {
    const int bag = layout_.Assignment()[i];
    double* table = scores_.data() + plan.Offset(bag);
    for (std::int64_t idx = 0; idx < plan.BagSize(bag); ++idx) {
      plan.Decode(bag, idx, scratch_);
      plan.Decode(bag, idx, deviated);
      for (std::size_t m = 0; m < members.size(); ++m) {
        deviated[members[m]] = atom.deviation[m];
      }
      table[idx] += coefficient *
                    (game.Utility(i, deviated) - game.Utility(i, scratch_));
    }
  }
}

DpPlan::Result Correlator::Respond(std::span<const double> noise) {
  return layout_.Plan().Optimize(scores_, Sense::kMinimize, noise, workspace_);
}

Deviator::Deviator(const MetaGameLayout& layout)
    : layout_(layout), scratch_(layout.GetGame().NumPlayers(), 0) {
  const std::int64_t total = layout.Plan().TotalSize();
  const auto terms = static_cast<std::int64_t>(layout.Terms().size());
  if (total > 0 && terms > SizeCaps::FromEnvironment().deviations / total) {
    throw CapError("deviator tables would exceed the size cap");
  }
  scores_.assign(terms, std::vector<double>(total, 0.0));
}

void Deviator::Accumulate(std::span<const int> action, double weight) {
  const Game& game = layout_.GetGame();
  const DpPlan& plan = layout_.Plan();
  const auto& terms = layout_.Terms();
  std::copy(action.begin(), action.end(), scratch_.begin());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const GainTerm& term = terms[k];
    const std::vector<int>& members =
        layout_.Coalitions()[term.coalition].members;
    for (int i : term.gain_players) {
      const int bag = layout_.Assignment()[i];
      const double base = game.Utility(i, action);
      double* table = scores_[k].data() + plan.Offset(bag);
      for (std::int64_t idx = 0; idx < plan.BagSize(bag); ++idx) {
        plan.Decode(bag, idx, scratch_);
        // Only coalition members deviate; everyone else keeps `action`.
        for (int j : plan.Decomposition().Bag(bag)) {
          if (!std::binary_search(members.begin(), members.end(), j)) {
            scratch_[j] = action[j];
          }
        }
        table[idx] +=
            weight * term.coefficient * (game.Utility(i, scratch_) - base);
      }
      for (int j : plan.Decomposition().Bag(bag)) scratch_[j] = action[j];
    }
  }
}

DpPlan::Result Deviator::RespondTerm(int term, std::span<const double> noise) {
  return layout_.Plan().Optimize(scores_[term], Sense::kMaximize, noise,
                                 workspace_);
}

Deviator::Response Deviator::Respond(
    const std::vector<std::vector<double>>& noise) {
  Response best;
  best.value = -std::numeric_limits<double>::infinity();
  const auto& terms = layout_.Terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::span<const double> term_noise;
    if (k < noise.size()) term_noise = noise[k];
    DpPlan::Result result = RespondTerm(static_cast<int>(k), term_noise);
    if (result.value > best.value) {
      const std::vector<int>& members =
          layout_.Coalitions()[terms[k].coalition].members;
      best.value = result.value;
      best.term = static_cast<int>(k);
      best.atom.coalition = terms[k].coalition;
      best.atom.target = terms[k].target;
      best.atom.deviation.clear();
      for (int j : members) best.atom.deviation.push_back(result.assignment[j]);
    }
  }
  return best;
}

double SolveResult::DualityGap() const {
  return (correlator_regret + deviator_regret) / std::max(1, horizon);
}

SparseDistribution AverageOf(const std::vector<JointAction>& history) {
  std::map<JointAction, std::int64_t> counts;
  for (const JointAction& a : history) ++counts[a];
  return SparseDistribution::FromCounts(counts);
}

DeviatorMixture AverageOf(const std::vector<DeviatorAtom>& history) {
  std::map<DeviatorAtom, std::int64_t> counts;
  for (const DeviatorAtom& atom : history) ++counts[atom];
  DeviatorMixture mixture;
  for (const auto& [atom, count] : counts) {
    mixture.emplace_back(atom, static_cast<double>(count) /
                                   static_cast<double>(history.size()));
  }
  return mixture;
}

SolveResult SolveMase(std::shared_ptr<const Game> game,
                      const CoalitionSet& coalitions,
                      const TreeDecomposition& td, const SolverConfig& config,
                      const MetricsEvaluator& evaluate) {
  if (config.horizon < 1) throw InputError("horizon T must be >= 1");
  const double eta = config.EffectiveEta();
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("learning rate eta must be positive");
  }
  const Game& g = *game;
  MetaGameLayout layout(game, coalitions, td, config.objective);
  Correlator correlator(layout);
  Deviator deviator(layout);
  SplitMix64 rng(config.seed);

  JointAction action = RandomJointAction(g, rng);
  DeviatorAtom atom = RandomAtom(layout, rng, config.caps.deviations);

  const std::int64_t table_size = layout.Plan().TotalSize();
  std::vector<double> correlator_noise;
  std::vector<std::vector<double>> deviator_noise;
  if (!config.zero_noise) {
    correlator_noise.resize(table_size);
    deviator_noise.assign(layout.Terms().size(),
                          std::vector<double>(table_size));
  }

  MetricsEvaluator measure = evaluate;
  if (!measure) {
    measure = [&](const SparseDistribution& average, MetricsRow& row) {
      row.exploitability = Exploitability(g, average);
      row.coalition_exploitability =
          CoalitionExploitability(g, average, coalitions, config.objective,
                                  &td, config.caps)
              .value;
      row.social_welfare = SocialWelfare(g, average);
    };
  }

  SolveResult result;
  result.horizon = config.horizon;
  std::map<JointAction, std::int64_t> counts;
  std::map<DeviatorAtom, std::int64_t> atom_counts;
  const int interval = config.RecordInterval();
  auto regrets = [&]() {
    const double best_fixed_pi = correlator.Respond({}).value;
    const double best_fixed_mu = deviator.Respond({}).value;
    result.correlator_regret = result.realized_payoff - best_fixed_pi;
    result.deviator_regret = best_fixed_mu - result.realized_payoff;
  };

  for (int t = 1; t <= config.horizon; ++t) {
    ++counts[action];
    ++atom_counts[atom];
    if (config.keep_history) {
      result.strategy_history.push_back(action);
      result.deviator_history.push_back(atom);
    }
    result.realized_payoff += layout.PurePayoff(action, atom);
    correlator.Accumulate(atom);
    deviator.Accumulate(action);

    if (interval > 0 && (t % interval == 0 || t == config.horizon)) {
      regrets();
      MetricsRow row;
      row.t = t;
      measure(SparseDistribution::FromCounts(counts), row);
      row.correlator_regret = result.correlator_regret;
      row.deviator_regret = result.deviator_regret;
      result.metrics.push_back(row);
    }
    if (t == config.horizon) break;

    if (!config.zero_noise) {
      SampleExponentialNoise(eta, rng, correlator_noise);
      for (auto& noise : deviator_noise) SampleExponentialNoise(eta, rng, noise);
    }
    action = correlator.Respond(correlator_noise).assignment;
    atom = deviator.Respond(deviator_noise).atom;
  }
  regrets();

  result.average_strategy = SparseDistribution::FromCounts(counts);
  for (const auto& [a, count] : atom_counts) {
    result.average_deviator.emplace_back(
        a, static_cast<double>(count) / static_cast<double>(config.horizon));
  }
  return result;
}

SolveResult SolveMasePolymatrix(std::shared_ptr<const PolymatrixGame> game,
                                const CoalitionSet& coalitions,
                                const SolverConfig& config) {
  coalitions.Validate(*game);
  auto lifted = std::make_shared<EdgePlayerGame>(game);
  const CoalitionSet lifted_coalitions = LiftCoalitions(*lifted, coalitions);
  const TreeDecomposition lifted_td =
      HeuristicTreeDecomposition(BuildDependencyGraph(*lifted));
  const TreeDecomposition base_td =
      HeuristicTreeDecomposition(BuildDependencyGraph(*game));
  auto project = [&](const SparseDistribution& pi) {
    return pi.Map([&](const JointAction& a) { return lifted->Project(a); });
  };
  MetricsEvaluator measure = [&](const SparseDistribution& average,
                                 MetricsRow& row) {
    const SparseDistribution original = project(average);
    row.exploitability = Exploitability(*game, original);
    row.coalition_exploitability =
        CoalitionExploitability(*game, original, coalitions, config.objective,
                                &base_td, config.caps)
            .value;
    row.social_welfare = SocialWelfare(*game, original);
  };
  SolveResult result =
      SolveMase(lifted, lifted_coalitions, lifted_td, config, measure);
  result.average_strategy = project(result.average_strategy);
  for (JointAction& a : result.strategy_history) a = lifted->Project(a);
  auto project_atom = [&](DeviatorAtom& atom) {
    atom.deviation.resize(coalitions[atom.coalition].members.size());
  };
  for (DeviatorAtom& atom : result.deviator_history) project_atom(atom);
  for (auto& [atom, prob] : result.average_deviator) project_atom(atom);
  return result;
}

Regrets EmpiricalRegret(const Game& game, const CoalitionSet& coalitions,
                        Objective objective,
                        const std::vector<JointAction>& strategy_history,
                        const std::vector<DeviatorAtom>& deviator_history,
                        const TreeDecomposition* td, const SizeCaps& caps) {
  if (strategy_history.size() != deviator_history.size() ||
      strategy_history.empty()) {
    throw InputError("histories must be non-empty and of equal length");
  }
  const double horizon = static_cast<double>(strategy_history.size());
  double realized = 0.0;
  for (std::size_t t = 0; t < strategy_history.size(); ++t) {
    realized += CoalitionGain(
        game, SparseDistribution::PointMass(strategy_history[t]), coalitions,
        objective, deviator_history[t]);
  }
  const SparseDistribution pi_bar = AverageOf(strategy_history);
  const DeviatorMixture mu_bar = AverageOf(deviator_history);

  Regrets regrets;
  regrets.deviator =
      horizon * CoalitionExploitability(game, pi_bar, coalitions, objective,
                                        td, caps)
                    .value -
      realized;

  double best_pi = std::numeric_limits<double>::infinity();
  if (game.NumJointActions(caps.joint_actions) <= caps.joint_actions) {
    JointAction a(game.NumPlayers(), 0);
    while (true) {
      best_pi = std::min(best_pi,
                         MetaPayoff(game, SparseDistribution::PointMass(a),
                                    mu_bar, coalitions, objective));
      int i = game.NumPlayers() - 1;
      while (i >= 0 && ++a[i] == game.NumActions(i)) a[i--] = 0;
      if (i < 0) break;
    }
  } else {
    if (td == nullptr) {
      throw CapError("joint action space exceeds the cap and no tree "
                     "decomposition was given");
    }
    auto view = std::shared_ptr<const Game>(&game, [](const Game*) {});
    MetaGameLayout layout(view, coalitions, *td, objective);
    Correlator correlator(layout);
    for (const auto& [atom, prob] : mu_bar) correlator.Accumulate(atom, prob);
    best_pi = correlator.Respond({}).value;
  }
  regrets.correlator = realized - horizon * best_pi;
  return regrets;
}

}  // namespace mase
