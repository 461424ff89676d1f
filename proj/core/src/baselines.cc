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

#include "mase/baselines.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "mase/evaluator.h"
#include "mase/rng.h"

namespace mase {
namespace {

// Expected utility of each of `player`'s actions when the other members of
// N(player) play `strategies` independently.
std::vector<double> ExpectedUtilities(
    const Game& game, int player,
    const std::vector<std::vector<double>>& strategies, const SizeCaps& caps,
    JointAction& joint) {
  std::vector<int> others;
  std::vector<int> sizes;
  for (int j : game.Neighborhood(player)) {
    if (j == player) continue;
    others.push_back(j);
    sizes.push_back(game.NumActions(j));
  }
  if (SaturatingProduct(sizes, caps.joint_actions) > caps.joint_actions) {
    throw CapError("opponent action space of a player exceeds the cap");
  }
  std::vector<double> values(game.NumActions(player), 0.0);
  std::vector<int> local(others.size(), 0);
  while (true) {
    double prob = 1.0;
    for (std::size_t m = 0; m < others.size(); ++m) {
      joint[others[m]] = local[m];
      prob *= strategies[others[m]][local[m]];
    }
    if (prob > 0.0) {
      for (int a = 0; a < game.NumActions(player); ++a) {
        joint[player] = a;
        values[a] += prob * game.Utility(player, joint);
      }
    }
    int m = static_cast<int>(others.size()) - 1;
    while (m >= 0 && ++local[m] == sizes[m]) local[m--] = 0;
    if (m < 0) break;
  }
  return values;
}

std::vector<double> Softmax(const std::vector<double>& scores, double eta) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> x(scores.size());
  double total = 0.0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    x[a] = std::exp(eta * (scores[a] - top));
    total += x[a];
  }
  for (double& v : x) v /= total;
  return x;
}

// Adds (1 / horizon) * prod_i strategies[i] to the dense joint table.
void AccumulateProduct(const Game& game,
                       const std::vector<std::vector<double>>& strategies,
                       double scale, std::vector<double>& dense) {
  std::vector<double> product = {scale};
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::vector<double> next;
    next.reserve(product.size() * game.NumActions(i));
    for (double p : product) {
      for (double x : strategies[i]) next.push_back(p * x);
    }
    product = std::move(next);
  }
  for (std::size_t k = 0; k < dense.size(); ++k) dense[k] += product[k];
}

SparseDistribution DenseToSparse(const Game& game,
                                 const std::vector<double>& dense) {
  std::vector<SparseDistribution::Entry> entries;
  double total = 0.0;
  for (double p : dense) total += p;
  JointAction a(game.NumPlayers(), 0);
  for (double p : dense) {
    if (p > 0.0) entries.push_back({a, p / total});
    int i = game.NumPlayers() - 1;
    while (i >= 0 && ++a[i] == game.NumActions(i)) a[i--] = 0;
  }
  return SparseDistribution::FromEntries(std::move(entries));
}

}  // namespace

BaselineAlgorithm ParseBaselineAlgorithm(std::string_view name) {
  if (name == "hedge") return BaselineAlgorithm::kHedge;
  if (name == "ftrl") return BaselineAlgorithm::kFtrl;
  if (name == "omd") return BaselineAlgorithm::kOmd;
  if (name == "ftpl") return BaselineAlgorithm::kFtpl;
  throw InputError("unknown baseline '" + std::string(name) +
                   "'; expected hedge, ftrl, omd or ftpl");
}

std::string BaselineName(BaselineAlgorithm algorithm) {
  switch (algorithm) {
    case BaselineAlgorithm::kHedge:
      return "hedge";
    case BaselineAlgorithm::kFtrl:
      return "ftrl";
    case BaselineAlgorithm::kOmd:
      return "omd";
    case BaselineAlgorithm::kFtpl:
      return "ftpl";
  }
  return "unknown";
}

int BaselineConfig::RecordInterval() const {
  if (record_every < 0) return 0;
  if (record_every == 0) return std::max(1, horizon / 100);
  return record_every;
}

std::vector<double> ProjectOntoSimplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> x(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) x[k] = std::max(0.0, v[k] - theta);
  return x;
}

BaselineResult RunBaseline(const Game& game, const BaselineConfig& config,
                           const CoalitionSet& metric_coalitions,
                           const TreeDecomposition* td) {
  if (config.horizon < 1) throw InputError("horizon T must be >= 1");
  if (!(config.eta > 0.0)) throw InputError("learning rate eta must be > 0");
  metric_coalitions.Validate(game);
  const int n = game.NumPlayers();
  const bool ftpl = config.algorithm == BaselineAlgorithm::kFtpl;
  const std::int64_t joint_size = game.NumJointActions(config.caps.joint_actions);
  if (!ftpl && joint_size > config.caps.joint_actions) {
    throw CapError("dense average strategy exceeds the joint-action cap");
  }

  SplitMix64 rng(config.seed);
  std::vector<std::vector<double>> strategies(n);
  std::vector<std::vector<double>> cumulative(n);
  JointAction action(n, 0);
  for (int i = 0; i < n; ++i) {
    const int k = game.NumActions(i);
    cumulative[i].assign(k, 0.0);
    if (ftpl) {
      action[i] = rng.NextInt(k);
      strategies[i].assign(k, 0.0);
      strategies[i][action[i]] = 1.0;
    } else {
      strategies[i].assign(k, 1.0 / k);
    }
  }
  std::vector<double> earned(n, 0.0);
  std::vector<double> dense(ftpl ? 0 : joint_size, 0.0);
  std::map<JointAction, std::int64_t> counts;

  auto average = [&](int t) {
    if (ftpl) return SparseDistribution::FromCounts(counts);
    std::vector<double> scaled(dense);
    for (double& p : scaled) p /= t;
    return DenseToSparse(game, scaled);
  };
  auto max_regret = [&]() {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double best =
          *std::max_element(cumulative[i].begin(), cumulative[i].end());
      worst = std::max(worst, best - earned[i]);
    }
    return worst;
  };

  BaselineResult result;
  const int interval = config.RecordInterval();
  JointAction joint(n, 0);
  std::vector<std::vector<double>> payoff(n);
  for (int t = 1; t <= config.horizon; ++t) {
    if (ftpl) {
      ++counts[action];
      for (int i = 0; i < n; ++i) {
        joint = action;
        payoff[i].assign(game.NumActions(i), 0.0);
        for (int a = 0; a < game.NumActions(i); ++a) {
          joint[i] = a;
          payoff[i][a] = game.Utility(i, joint);
        }
        earned[i] += payoff[i][action[i]];
      }
    } else {
      AccumulateProduct(game, strategies, 1.0, dense);
      for (int i = 0; i < n; ++i) {
        payoff[i] = ExpectedUtilities(game, i, strategies, config.caps, joint);
        earned[i] += std::inner_product(payoff[i].begin(), payoff[i].end(),
                                        strategies[i].begin(), 0.0);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < payoff[i].size(); ++a) {
        cumulative[i][a] += payoff[i][a];
      }
    }

    if (interval > 0 && (t % interval == 0 || t == config.horizon)) {
      const SparseDistribution avg = average(t);
      MetricsRow row;
      row.t = t;
      row.exploitability = Exploitability(game, avg);
      row.coalition_exploitability =
          CoalitionExploitability(game, avg, metric_coalitions,
                                  Objective::kWeighted, td, config.caps)
              .value;
      row.social_welfare = SocialWelfare(game, avg);
      row.correlator_regret = max_regret();
      row.deviator_regret = std::nan("");
      result.metrics.push_back(row);
    }
    if (t == config.horizon) break;

    for (int i = 0; i < n; ++i) {
      switch (config.algorithm) {
        case BaselineAlgorithm::kHedge:
          strategies[i] = Softmax(cumulative[i], config.eta);
          break;
        case BaselineAlgorithm::kFtrl: {
          std::vector<double> scaled(cumulative[i]);
          for (double& v : scaled) v *= config.eta;
          strategies[i] = ProjectOntoSimplex(scaled);
          break;
        }
        case BaselineAlgorithm::kOmd: {
          std::vector<double> step(strategies[i]);
          for (std::size_t a = 0; a < step.size(); ++a) {
            step[a] += config.eta * payoff[i][a];
          }
          strategies[i] = ProjectOntoSimplex(step);
          break;
        }
        case BaselineAlgorithm::kFtpl: {
          int best = 0;
          double best_value = -std::numeric_limits<double>::infinity();
          for (int a = 0; a < game.NumActions(i); ++a) {
            const double value =
                cumulative[i][a] + rng.NextExponential(config.eta);
            if (value > best_value) {
              best_value = value;
              best = a;
            }
          }
          action[i] = best;
          std::fill(strategies[i].begin(), strategies[i].end(), 0.0);
          strategies[i][best] = 1.0;
          break;
        }
      }
    }
  }

  result.average_strategy = average(config.horizon);
  result.final_strategies = strategies;
  for (int i = 0; i < n; ++i) {
    result.external_regret.push_back(
        *std::max_element(cumulative[i].begin(), cumulative[i].end()) -
        earned[i]);
  }
  return result;
}

}  // namespace mase
