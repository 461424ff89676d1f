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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "mase/baselines.h"
#include "mase/coalitions.h"
#include "mase/evaluator.h"
#include "mase/ewf.h"
#include "mase/ftpl.h"
#include "mase/game.h"
#include "mase/io.h"
#include "mase/lp.h"
#include "mase/metrics.h"
#include "mase/structure.h"

#ifndef MASE_VERSION
#define MASE_VERSION "unknown"
#endif

namespace mase::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
  // gen
  int players = 2;
  int actions = 2;
  double degree = 1.0;
  // shared
  std::optional<std::uint64_t> seed;
  std::string game;
  std::string coalitions = "singletons";
  std::string objective = "weighted";
  std::string td = "auto";
  std::string output;
  std::string metrics = "metrics.csv";
  std::string strategy;
  int horizon = 10000;
  double eta = 0.01;
  int record_every = 0;
  bool theory_rate = false;
  bool no_lift = false;
  bool optimal_cce = false;
  std::string algo = "hedge";
  // ewf
  double epsilon = 0.0;
  double eps_tol = 1e-3;
  std::string backend = "lp";
  int points = 21;
  double max_epsilon = 1.0;
  std::string by = "epsilon";
  int jobs = 1;
};

// Records what was run next to every output file.
class Manifest {
 public:
  Manifest(const std::vector<std::string>& args, const CLI::App* command)
      : start_(Clock::now()) {
    doc_["command"] = command == nullptr ? "" : CommandPath(command);
    doc_["argv"] = args;
    doc_["version"] = MASE_VERSION;
    json parameters = json::object();
    for (const CLI::App* app = command; app != nullptr; app = app->get_parent()) {
      for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "-h,--help") continue;
        if (opt->count() > 0) {
          const auto& results = opt->results();
          parameters[opt->get_single_name()] =
              results.size() == 1 ? json(results[0]) : json(results);
        } else if (!opt->get_default_str().empty()) {
          parameters[opt->get_single_name()] = opt->get_default_str();
        }
      }
    }
    doc_["parameters"] = parameters;
    doc_["outputs"] = json::array();
  }

  void SetSeed(std::optional<std::uint64_t> seed) {
    if (seed) doc_["seed"] = *seed;
  }
  void AddOutput(const std::string& path) { doc_["outputs"].push_back(path); }

  void WriteNextTo(const std::vector<std::string>& paths) {
    doc_["wall_clock_seconds"] =
        std::chrono::duration<double>(Clock::now() - start_).count();
    const std::string text = doc_.dump(2) + "\n";
    for (const std::string& path : paths) {
      WriteFile(path + ".manifest.json", text);
    }
  }

 private:
  static std::string CommandPath(const CLI::App* app) {
    std::string path;
    for (; app != nullptr && app->get_parent() != nullptr;
         app = app->get_parent()) {
      path = path.empty() ? app->get_name() : app->get_name() + " " + path;
    }
    return path;
  }

  Clock::time_point start_;
  json doc_;
};

std::uint64_t RequireSeed(const Options& o) {
  if (!o.seed) throw InputError("this command is randomized; pass --seed");
  return *o.seed;
}

std::string Num(double v) { return FormatNumber(v); }

TreeDecomposition ResolveTd(const std::string& spec, const Game& game) {
  if (spec == "auto") {
    return HeuristicTreeDecomposition(BuildDependencyGraph(game));
  }
  TreeDecomposition td = ParseTreeDecomposition(ReadFile(spec));
  if (auto violation =
          ValidateTreeDecomposition(td, BuildDependencyGraph(game))) {
    throw InputError("decomposition invalid: " + violation->message);
  }
  return td;
}

SolverConfig MakeSolverConfig(const Options& o) {
  SolverConfig config;
  config.horizon = o.horizon;
  config.eta = o.eta;
  config.seed = o.seed.value_or(0);
  config.objective = ParseObjective(o.objective);
  config.record_every = o.record_every;
  config.theory_rate = o.theory_rate;
  return config;
}

int Gen(const CLI::App& sub, const Options& o, Manifest& manifest,
        std::ostream& out) {
  const std::uint64_t seed = RequireSeed(o);
  manifest.SetSeed(seed);
  std::shared_ptr<const Game> game;
  if (sub.got_subcommand("normal")) {
    game = RandomNormalForm(o.players, o.actions, seed);
  } else {
    game = RandomPolymatrix(o.players, o.degree, o.actions, seed);
  }
  const std::string path = o.output.empty() ? "game.json" : o.output;
  WriteFile(path, GameToJson(*game));
  manifest.AddOutput(path);
  manifest.WriteNextTo({path});
  out << "wrote " << path << "\n";
  return kExitOk;
}

int SolveFtpl(const Options& o, Manifest& manifest, std::ostream& out) {
  const std::uint64_t seed = RequireSeed(o);
  manifest.SetSeed(seed);
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const CoalitionSet coalitions = ParseCoalitionSpec(o.coalitions, *game);
  const SolverConfig config = MakeSolverConfig(o);
  SolveResult result;
  const auto polymatrix = std::dynamic_pointer_cast<const PolymatrixGame>(game);
  if (polymatrix != nullptr && !o.no_lift) {
    result = SolveMasePolymatrix(polymatrix, coalitions, config);
  } else {
    const TreeDecomposition td = ResolveTd(o.td, *game);
    result = SolveMase(game, coalitions, td, config);
  }
  const std::string strategy_path =
      o.output.empty() ? "strategy.json" : o.output;
  WriteFile(strategy_path, StrategyToJson(result.average_strategy));
  WriteMetricsCsv(result.metrics, o.metrics);
  manifest.AddOutput(strategy_path);
  manifest.AddOutput(o.metrics);
  manifest.WriteNextTo({strategy_path, o.metrics});
  if (!result.metrics.empty()) {
    const MetricsRow& last = result.metrics.back();
    out << "coalition_exploitability " << Num(last.coalition_exploitability)
        << "\nexploitability " << Num(last.exploitability)
        << "\nsocial_welfare " << Num(last.social_welfare) << "\n";
  }
  out << "duality_gap " << Num(result.DualityGap()) << "\nsupport "
      << result.average_strategy.size() << "\n";
  return kExitOk;
}

int SolveLpCommand(const Options& o, Manifest& manifest, std::ostream& out) {
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const CoalitionSet coalitions = ParseCoalitionSpec(o.coalitions, *game);
  const Objective objective = ParseObjective(o.objective);
  const LpStrategy solved =
      o.optimal_cce ? LpOptimalCce(*game, coalitions, objective)
                    : LpMase(*game, coalitions, objective);
  const std::string path = o.output.empty() ? "strategy.json" : o.output;
  WriteFile(path, StrategyToJson(solved.strategy));
  manifest.AddOutput(path);
  manifest.WriteNextTo({path});
  out << "value " << Num(solved.value) << "\nsocial_welfare "
      << Num(SocialWelfare(*game, solved.strategy)) << "\nexploitability "
      << Num(Exploitability(*game, solved.strategy)) << "\n";
  return kExitOk;
}

int Eval(const Options& o, std::ostream& out) {
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const SparseDistribution pi = ParseStrategy(ReadFile(o.strategy));
  pi.Validate(*game);
  const CoalitionSet coalitions = ParseCoalitionSpec(o.coalitions, *game);
  const Objective objective = ParseObjective(o.objective);
  BestDeviation best;
  if (o.td == "auto") {
    best = CoalitionExploitability(*game, pi, coalitions, objective);
  } else {
    best = CoalitionExploitabilityDp(*game, pi, coalitions,
                                     ResolveTd(o.td, *game), objective);
  }
  out << "exploitability " << Num(Exploitability(*game, pi))
      << "\ncoalition_exploitability " << Num(best.value)
      << "\nsocial_welfare " << Num(SocialWelfare(*game, pi)) << "\n";
  out << "best_deviation coalition=" << best.atom.coalition << " action=";
  for (std::size_t m = 0; m < best.atom.deviation.size(); ++m) {
    out << (m ? "," : "") << best.atom.deviation[m];
  }
  out << "\n";
  return kExitOk;
}

int Baseline(const Options& o, Manifest& manifest, std::ostream& out) {
  const std::uint64_t seed = RequireSeed(o);
  manifest.SetSeed(seed);
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const CoalitionSet coalitions = ParseCoalitionSpec(o.coalitions, *game);
  BaselineConfig config;
  config.algorithm = ParseBaselineAlgorithm(o.algo);
  config.horizon = o.horizon;
  config.eta = o.eta;
  config.seed = seed;
  config.record_every = o.record_every;
  const BaselineResult result = RunBaseline(*game, config, coalitions);
  const std::string path = o.output.empty() ? "strategy.json" : o.output;
  WriteFile(path, StrategyToJson(result.average_strategy));
  WriteMetricsCsv(result.metrics, o.metrics);
  manifest.AddOutput(path);
  manifest.AddOutput(o.metrics);
  manifest.WriteNextTo({path, o.metrics});
  if (!result.metrics.empty()) {
    const MetricsRow& last = result.metrics.back();
    out << "coalition_exploitability " << Num(last.coalition_exploitability)
        << "\nexploitability " << Num(last.exploitability)
        << "\nsocial_welfare " << Num(last.social_welfare) << "\n";
  }
  return kExitOk;
}

int EwfSearch(const Options& o, Manifest& manifest, std::ostream& out) {
  const EwfBackend backend = ParseEwfBackend(o.backend);
  if (backend == EwfBackend::kFtpl) manifest.SetSeed(RequireSeed(o));
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const EwfSearchResult result = EwfBinarySearch(
      game, o.epsilon, o.eps_tol, backend, MakeSolverConfig(o));
  if (!o.output.empty()) {
    WriteFile(o.output, StrategyToJson(result.strategy));
    manifest.AddOutput(o.output);
    manifest.WriteNextTo({o.output});
  }
  out << "welfare " << Num(result.welfare) << "\nw " << Num(result.w)
      << "\nexploitability " << Num(result.exploitability) << "\nfeasible "
      << (result.feasible ? "true" : "false") << "\n";
  return kExitOk;
}

int EwfSweepCommand(const Options& o, Manifest& manifest, std::ostream& out) {
  const EwfBackend backend = ParseEwfBackend(o.backend);
  if (backend == EwfBackend::kFtpl) manifest.SetSeed(RequireSeed(o));
  if (o.points < 1) throw InputError("--points must be >= 1");
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  SweepKind kind;
  std::vector<double> values;
  if (o.by == "epsilon") {
    kind = SweepKind::kEpsilon;
    for (int k = 0; k < o.points; ++k) {
      values.push_back(o.points == 1 ? 0.0
                                     : o.max_epsilon * k / (o.points - 1));
    }
  } else if (o.by == "weight") {
    kind = SweepKind::kWeight;
    for (int k = 0; k < o.points; ++k) {
      values.push_back(static_cast<double>(k) / o.points);
    }
  } else {
    throw InputError("--by must be epsilon or weight");
  }
  const std::vector<FrontierPoint> frontier = EwfSweep(
      game, kind, values, backend, MakeSolverConfig(o), o.eps_tol, o.jobs);
  std::ostringstream csv;
  csv << "epsilon,welfare,w\n";
  for (const FrontierPoint& p : frontier) {
    csv << Num(p.epsilon) << ',' << Num(p.welfare) << ',' << Num(p.w) << '\n';
  }
  const std::string path = o.output.empty() ? "frontier.csv" : o.output;
  WriteFile(path, csv.str());
  manifest.AddOutput(path);
  manifest.WriteNextTo({path});
  out << csv.str();
  return kExitOk;
}

int EwfLp(const Options& o, Manifest& manifest, std::ostream& out) {
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const LpStrategy solved = LpWelfareUnderBudget(*game, o.epsilon);
  if (!o.output.empty()) {
    WriteFile(o.output, StrategyToJson(solved.strategy));
    manifest.AddOutput(o.output);
    manifest.WriteNextTo({o.output});
  }
  out << "welfare " << Num(solved.value) << "\nexploitability "
      << Num(Exploitability(*game, solved.strategy)) << "\n";
  return kExitOk;
}

int TdBuild(const Options& o, Manifest& manifest, std::ostream& out) {
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const TreeDecomposition td =
      HeuristicTreeDecomposition(BuildDependencyGraph(*game));
  const std::string path = o.output.empty() ? "td.json" : o.output;
  WriteFile(path, TreeDecompositionToJson(td));
  manifest.AddOutput(path);
  manifest.WriteNextTo({path});
  out << "bags " << td.NumBags() << "\nwidth " << td.Width() << "\n";
  return kExitOk;
}

int TdCheck(const Options& o, std::ostream& out) {
  const std::shared_ptr<const Game> game = ResolveGame(o.game);
  const TreeDecomposition td = ParseTreeDecomposition(ReadFile(o.td));
  if (auto violation =
          ValidateTreeDecomposition(td, BuildDependencyGraph(*game))) {
    out << "invalid: " << violation->message << "\n";
    return kExitInputError;
  }
  out << "valid\nwidth " << td.Width() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Coalition-robust equilibrium solver"};
  app.name(args.empty() ? "mase" : args[0]);
  app.require_subcommand(1);

  auto add_game = [&](CLI::App* sub) {
    sub->add_option("--game", o.game,
                    "Game file or built-in name (" +
                        [] {
                          std::string names;
                          for (const auto& n : BuiltinGameNames()) {
                            names += (names.empty() ? "" : ", ") + n;
                          }
                          return names;
                        }() +
                        ")")
        ->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
  };
  auto add_coalitions = [&](CLI::App* sub) {
    sub->add_option("--coalitions", o.coalitions,
                    "singletons, all, upto:k, connected:k or ewf:w")
        ->capture_default_str();
    sub->add_option("--objective", o.objective,
                    "average, weighted or maximum")
        ->capture_default_str();
  };
  auto add_learning = [&](CLI::App* sub) {
    sub->add_option("--T", o.horizon, "Number of steps")->capture_default_str();
    sub->add_option("--eta", o.eta, "Learning rate")->capture_default_str();
    sub->add_option("--record-every", o.record_every,
                    "Metric interval (0: T/100, <0: off)")
        ->capture_default_str();
    sub->add_option("--metrics", o.metrics, "Metrics CSV path")
        ->capture_default_str();
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a random game");
  gen->require_subcommand(1);
  CLI::App* gen_normal = gen->add_subcommand("normal", "Normal-form game");
  CLI::App* gen_poly = gen->add_subcommand("polymatrix", "Polymatrix game");
  for (CLI::App* sub : {gen_normal, gen_poly}) {
    sub->add_option("--players", o.players, "Number of players")->required();
    sub->add_option("--actions", o.actions, "Actions per player")->required();
    add_seed(sub);
    sub->add_option("-o,--output", o.output, "Output game file");
  }
  gen_poly->add_option("--degree", o.degree, "Expected degree c")
      ->capture_default_str();

  CLI::App* solve = app.add_subcommand("solve", "Compute a MASE");
  solve->require_subcommand(1);
  CLI::App* solve_ftpl = solve->add_subcommand("ftpl", "FTPL meta-game solver");
  add_game(solve_ftpl);
  add_coalitions(solve_ftpl);
  add_learning(solve_ftpl);
  add_seed(solve_ftpl);
  solve_ftpl->add_option("--td", o.td, "Tree decomposition file or auto")
      ->capture_default_str();
  solve_ftpl->add_flag("--theory-rate", o.theory_rate, "Use eta = 1/sqrt(T)");
  solve_ftpl->add_flag("--no-lift", o.no_lift,
                       "Solve polymatrix games without the edge-player form");
  solve_ftpl->add_option("-o,--output", o.output, "Strategy file")
      ->default_str("strategy.json");
  CLI::App* solve_lp = solve->add_subcommand("lp", "Exact linear program");
  add_game(solve_lp);
  add_coalitions(solve_lp);
  solve_lp->add_flag("--optimal-cce", o.optimal_cce,
                     "Restrict to coarse correlated equilibria");
  solve_lp->add_option("-o,--output", o.output, "Strategy file")
      ->default_str("strategy.json");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a strategy");
  add_game(eval);
  add_coalitions(eval);
  eval->add_option("--strategy", o.strategy, "Strategy file")->required();
  eval->add_option("--td", o.td, "Tree decomposition file or auto")
      ->capture_default_str();

  CLI::App* baseline = app.add_subcommand("baseline", "Per-player learners");
  add_game(baseline);
  add_coalitions(baseline);
  add_learning(baseline);
  add_seed(baseline);
  baseline->add_option("--algo", o.algo, "hedge, ftrl, omd or ftpl")
      ->capture_default_str();
  baseline->add_option("-o,--output", o.output, "Strategy file")
      ->default_str("strategy.json");

  CLI::App* ewf = app.add_subcommand("ewf", "Exploitability-welfare frontier");
  ewf->require_subcommand(1);
  CLI::App* ewf_search = ewf->add_subcommand("search", "Binary search on w");
  CLI::App* ewf_sweep = ewf->add_subcommand("sweep", "Frontier sweep");
  CLI::App* ewf_lp = ewf->add_subcommand("lp", "Exact frontier value");
  for (CLI::App* sub : {ewf_search, ewf_sweep, ewf_lp}) {
    add_game(sub);
    sub->add_option("-o,--output", o.output, "Output file");
  }
  for (CLI::App* sub : {ewf_search, ewf_sweep}) {
    sub->add_option("--eps-tol", o.eps_tol, "Bisection tolerance on w")
        ->capture_default_str();
    sub->add_option("--backend", o.backend, "lp or ftpl")->capture_default_str();
    sub->add_option("--T", o.horizon, "FTPL steps")->capture_default_str();
    sub->add_option("--eta", o.eta, "FTPL learning rate")->capture_default_str();
    add_seed(sub);
  }
  ewf_search->add_option("--epsilon", o.epsilon, "Exploitability budget")
      ->required();
  ewf_lp->add_option("--epsilon", o.epsilon, "Exploitability budget")
      ->required();
  ewf_sweep->add_option("--points", o.points, "Grid size")->capture_default_str();
  ewf_sweep->add_option("--max-epsilon", o.max_epsilon, "Largest budget")
      ->capture_default_str();
  ewf_sweep->add_option("--by", o.by, "epsilon or weight")->capture_default_str();
  ewf_sweep->add_option("--jobs", o.jobs, "Parallel workers")
      ->capture_default_str();

  CLI::App* td = app.add_subcommand("td", "Tree decompositions");
  td->require_subcommand(1);
  CLI::App* td_build = td->add_subcommand("build", "Heuristic decomposition");
  add_game(td_build);
  td_build->add_option("-o,--output", o.output, "Output file")
      ->default_str("td.json");
  CLI::App* td_check = td->add_subcommand("check", "Validate a decomposition");
  add_game(td_check);
  td_check->add_option("--td", o.td, "Decomposition file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands()[0];
  Manifest manifest(args, leaf);
  try {
    if (gen->parsed()) return Gen(*gen, o, manifest, out);
    if (solve_ftpl->parsed()) return SolveFtpl(o, manifest, out);
    if (solve_lp->parsed()) return SolveLpCommand(o, manifest, out);
    if (eval->parsed()) return Eval(o, out);
    if (baseline->parsed()) return Baseline(o, manifest, out);
    if (ewf_search->parsed()) return EwfSearch(o, manifest, out);
    if (ewf_sweep->parsed()) return EwfSweepCommand(o, manifest, out);
    if (ewf_lp->parsed()) return EwfLp(o, manifest, out);
    if (td_build->parsed()) return TdBuild(o, manifest, out);
    if (td_check->parsed()) return TdCheck(o, out);
  } catch (const CapError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitCapError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace mase::cli
