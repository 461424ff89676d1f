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

#ifndef MASE_IO_H_
#define MASE_IO_H_

#include <memory>
#include <string>
#include <string_view>

#include "mase/distribution.h"
#include "mase/game.h"
#include "mase/structure.h"

namespace mase {

// JSON file formats.
//
// Games:
//   {"type":"normal_form","actions":[["C","D"],["C","D"]],
//    "utilities":[[...],[...]]}
//   {"type":"polymatrix","num_players":N,"actions":[...],
//    "edges":[{"i":0,"j":1,"u_ij":[[..]],"u_ji":[[..]]}]}
// Tree decompositions: {"bags":[[0,1],[1,2]],"edges":[[0,1]],"root":0}
// Strategies: {"support":[{"action":[0,1],"prob":0.5}, ...]}
//
// Parsers throw InputError on malformed documents.

std::shared_ptr<const Game> ParseGame(std::string_view text);
std::string GameToJson(const Game& game);

TreeDecomposition ParseTreeDecomposition(std::string_view text);
std::string TreeDecompositionToJson(const TreeDecomposition& td);

SparseDistribution ParseStrategy(std::string_view text);
std::string StrategyToJson(const SparseDistribution& pi);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// A built-in game name or a path to a game file.
std::shared_ptr<const Game> ResolveGame(const std::string& name_or_path);

}  // namespace mase

#endif  // MASE_IO_H_
