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

#include "mase/ewf.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include "mase/coalitions.h"
#include "mase/evaluator.h"
#include "mase/lp.h"
#include "mase/rng.h"
#include "mase/structure.h"

namespace mase {

EwfBackend ParseEwfBackend(std::string_view name) {
  if (name == "lp") return EwfBackend::kLp;
  if (name == "ftpl") return EwfBackend::kFtpl;
  throw InputError("unknown backend '" + std::string(name) +
                   "'; expected lp or ftpl");
}

WeightedSolve WeightedMaseSolve(std::shared_ptr<const Game> game, double w,
                                EwfBackend backend,
                                const SolverConfig& config) {
  const CoalitionSet coalitions = EwfCoalitions(game->NumPlayers(), w);
  WeightedSolve solve;
  solve.w = w;
  if (backend == EwfBackend::kLp) {
    solve.strategy =
        LpMaseMaxWelfare(*game, coalitions, Objective::kWeighted, config.caps)
            .strategy;
  } else {
    SolverConfig quiet = config;
    quiet.objective = Objective::kWeighted;
    quiet.record_every = -1;
    quiet.keep_history = false;
    const auto polymatrix =
        std::dynamic_pointer_cast<const PolymatrixGame>(game);
    if (polymatrix != nullptr) {
      solve.strategy =
          SolveMasePolymatrix(polymatrix, coalitions, quiet).average_strategy;
    } else {
      const TreeDecomposition td =
          HeuristicTreeDecomposition(BuildDependencyGraph(*game));
      solve.strategy =
          SolveMase(game, coalitions, td, quiet).average_strategy;
    }
  }
  solve.exploitability = Exploitability(*game, solve.strategy);
  solve.welfare = SocialWelfare(*game, solve.strategy);
  return solve;
}

EwfSearchResult EwfBinarySearch(std::shared_ptr<const Game> game,
                                double epsilon, double eps_tol,
                                EwfBackend backend,
                                const SolverConfig& config) {
  if (!(epsilon >= 0.0)) throw InputError("epsilon must be >= 0");
  if (!(eps_tol > 0.0)) throw InputError("eps-tol must be > 0");
  EwfSearchResult result;
  bool found = false;
  auto record = [&](const WeightedSolve& s) {
    result.welfare = s.welfare;
    result.w = s.w;
    result.exploitability = s.exploitability;
    result.strategy = s.strategy;
  };
  double l = 0.0;
  double r = 1.0;
  while (r - l > eps_tol) {
    const double w = 0.5 * (l + r);
    WeightedSolve s = WeightedMaseSolve(game, w, backend, config);
    if (s.exploitability <= epsilon + kTolerance) {
      record(s);
      found = true;
      r = w;
    } else {
      l = w;
    }
    result.trace.push_back(std::move(s));
  }
  if (!found) {
    const double w = std::max(0.5 * (l + 1.0), 1.0 - 0.5 * eps_tol);
    WeightedSolve s = WeightedMaseSolve(game, w, backend, config);
    record(s);
    result.feasible = s.exploitability <= epsilon + kTolerance;
    result.trace.push_back(std::move(s));
  }
  return result;
}

std::vector<FrontierPoint> EwfSweep(std::shared_ptr<const Game> game,
                                    SweepKind kind,
                                    const std::vector<double>& values,
                                    EwfBackend backend,
                                    const SolverConfig& config, double eps_tol,
                                    int jobs) {
  std::vector<std::uint64_t> seeds;
  SplitMix64 root(config.seed);
  for (std::size_t k = 0; k < values.size(); ++k) seeds.push_back(root.Next());

  std::vector<FrontierPoint> points(values.size());
  auto solve_point = [&](std::size_t k) {
    SolverConfig local = config;
    local.seed = seeds[k];
    FrontierPoint& p = points[k];
    if (kind == SweepKind::kEpsilon) {
      const EwfSearchResult s =
          EwfBinarySearch(game, values[k], eps_tol, backend, local);
      p = {values[k], s.welfare, s.w, s.strategy};
    } else {
      const WeightedSolve s = WeightedMaseSolve(game, values[k], backend, local);
      p = {s.exploitability, s.welfare, s.w, s.strategy};
    }
  };

  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(values.size())));
  if (jobs == 1) {
    for (std::size_t k = 0; k < values.size(); ++k) solve_point(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (int j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j]() {
        try {
          for (std::size_t k = next++; k < values.size(); k = next++) {
            solve_point(k);
          }
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) {
                     return a.epsilon < b.epsilon;
                   });
  return points;
}

}  // namespace mase
