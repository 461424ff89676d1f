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

#ifndef MASE_EVALUATOR_H_
#define MASE_EVALUATOR_H_

#include "mase/coalitions.h"
#include "mase/common.h"
#include "mase/distribution.h"
#include "mase/game.h"
#include "mase/structure.h"

namespace mase {

// Exact evaluation of correlated strategies. All expectations are taken over
// the sparse support; nothing is sampled.

// Sum over players of E_{a~pi}[U_i(a)].
double SocialWelfare(const Game& game, const SparseDistribution& pi);

// max_i max_{a'_i} E_{a~pi}[U_i(a'_i, a_{-i}) - U_i(a)].
double Exploitability(const Game& game, const SparseDistribution& pi);

struct BestDeviation {
  double value = 0.0;
  DeviatorAtom atom;
};

// Value of a single deviator atom against pi under `objective`. For
// kMaximum the atom's target must be a member of its coalition; otherwise it
// must be -1.
double CoalitionGain(const Game& game, const SparseDistribution& pi,
                     const CoalitionSet& coalitions, Objective objective,
                     const DeviatorAtom& atom);

// F(pi, mu): the bilinear meta-game payoff, sum over atoms of
// mu(atom) * CoalitionGain(atom). Throws InputError for atoms whose
// coalition is not in `coalitions`.
double MetaPayoff(const Game& game, const SparseDistribution& pi,
                  const DeviatorMixture& mu, const CoalitionSet& coalitions,
                  Objective objective = Objective::kWeighted);

// Coalition exploitability by enumerating every coalition and joint
// deviation. Ties go to the first coalition, then the lexicographically
// smallest deviation. Throws CapError when the deviation space exceeds
// caps.deviations.
BestDeviation CoalitionExploitabilityBruteForce(
    const Game& game, const SparseDistribution& pi,
    const CoalitionSet& coalitions, Objective objective = Objective::kWeighted,
    const SizeCaps& caps = SizeCaps::FromEnvironment());

// Coalition exploitability by a max-aggregation pass over `td` for each
// coalition. Throws InputError if `td` is not a valid decomposition of the
// game's dependency graph.
BestDeviation CoalitionExploitabilityDp(
    const Game& game, const SparseDistribution& pi,
    const CoalitionSet& coalitions, const TreeDecomposition& td,
    Objective objective = Objective::kWeighted);

// Brute force when the enumeration (deviations times support) fits
// caps.deviations, dynamic programming otherwise. `td` may be null, in which
// case a heuristic decomposition is built when needed.
BestDeviation CoalitionExploitability(
    const Game& game, const SparseDistribution& pi,
    const CoalitionSet& coalitions, Objective objective = Objective::kWeighted,
    const TreeDecomposition* td = nullptr,
    const SizeCaps& caps = SizeCaps::FromEnvironment());

// Coalition exploitability <= 0 up to kTolerance.
bool IsMaseLeq0(const Game& game, const SparseDistribution& pi,
                const CoalitionSet& coalitions,
                const SizeCaps& caps = SizeCaps::FromEnvironment());

}  // namespace mase

#endif  // MASE_EVALUATOR_H_
