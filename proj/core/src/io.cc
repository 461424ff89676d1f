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

#include "mase/io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace mase {
namespace {

using nlohmann::json;

json Parse(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

const json& Field(const json& object, const char* name, const char* what) {
  if (!object.is_object() || !object.contains(name)) {
    throw InputError(std::string(what) + " is missing field '" + name + "'");
  }
  return object.at(name);
}

template <typename T>
T As(const json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad value for ") + what + ": " + e.what());
  }
}

std::vector<double> FlattenTable(const json& table, int rows, int columns,
                                 const char* what) {
  const auto nested = As<std::vector<std::vector<double>>>(table, what);
  if (static_cast<int>(nested.size()) != rows) {
    throw InputError(std::string(what) + " has the wrong number of rows");
  }
  std::vector<double> flat;
  for (const auto& row : nested) {
    if (static_cast<int>(row.size()) != columns) {
      throw InputError(std::string(what) + " has the wrong number of columns");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

json NestTable(const std::vector<double>& flat, int rows, int columns) {
  json table = json::array();
  for (int r = 0; r < rows; ++r) {
    table.push_back(std::vector<double>(flat.begin() + r * columns,
                                        flat.begin() + (r + 1) * columns));
  }
  return table;
}

}  // namespace

std::shared_ptr<const Game> ParseGame(std::string_view text) {
  const json doc = Parse(text, "game");
  const auto type = As<std::string>(Field(doc, "type", "game"), "type");
  auto actions = As<std::vector<std::vector<std::string>>>(
      Field(doc, "actions", "game"), "actions");
  if (type == "normal_form") {
    auto utilities = As<std::vector<std::vector<double>>>(
        Field(doc, "utilities", "game"), "utilities");
    return std::make_shared<NormalFormGame>(std::move(actions),
                                            std::move(utilities));
  }
  if (type == "polymatrix") {
    const int n = As<int>(Field(doc, "num_players", "game"), "num_players");
    if (n != static_cast<int>(actions.size())) {
      throw InputError("num_players does not match the action lists");
    }
    std::vector<PolymatrixEdge> edges;
    for (const json& e : Field(doc, "edges", "game")) {
      PolymatrixEdge edge;
      edge.i = As<int>(Field(e, "i", "edge"), "i");
      edge.j = As<int>(Field(e, "j", "edge"), "j");
      if (edge.i < 0 || edge.i >= n || edge.j < 0 || edge.j >= n) {
        throw InputError("edge endpoint outside [0, num_players)");
      }
      const int ai = static_cast<int>(actions[edge.i].size());
      const int aj = static_cast<int>(actions[edge.j].size());
      edge.u_ij = FlattenTable(Field(e, "u_ij", "edge"), ai, aj, "u_ij");
      edge.u_ji = FlattenTable(Field(e, "u_ji", "edge"), aj, ai, "u_ji");
      edges.push_back(std::move(edge));
    }
    return std::make_shared<PolymatrixGame>(std::move(actions),
                                            std::move(edges));
  }
  throw InputError("unknown game type '" + type +
                   "'; expected normal_form or polymatrix");
}

std::string GameToJson(const Game& game) {
  json doc;
  json actions = json::array();
  for (int i = 0; i < game.NumPlayers(); ++i) {
    actions.push_back(game.ActionNames(i));
  }
  if (const auto* nf = dynamic_cast<const NormalFormGame*>(&game)) {
    doc["type"] = "normal_form";
    doc["actions"] = actions;
    json utilities = json::array();
    for (int i = 0; i < game.NumPlayers(); ++i) {
      utilities.push_back(nf->UtilityTensor(i));
    }
    doc["utilities"] = utilities;
  } else if (const auto* pm = dynamic_cast<const PolymatrixGame*>(&game)) {
    doc["type"] = "polymatrix";
    doc["num_players"] = game.NumPlayers();
    doc["actions"] = actions;
    json edges = json::array();
    for (const PolymatrixEdge& e : pm->Edges()) {
      const int ai = game.NumActions(e.i);
      const int aj = game.NumActions(e.j);
      edges.push_back({{"i", e.i},
                       {"j", e.j},
                       {"u_ij", NestTable(e.u_ij, ai, aj)},
                       {"u_ji", NestTable(e.u_ji, aj, ai)}});
    }
    doc["edges"] = edges;
  } else {
    throw InputError("only normal_form and polymatrix games can be saved");
  }
  return doc.dump(2) + "\n";
}

TreeDecomposition ParseTreeDecomposition(std::string_view text) {
  const json doc = Parse(text, "tree decomposition");
  auto bags = As<std::vector<std::vector<int>>>(
      Field(doc, "bags", "tree decomposition"), "bags");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : As<std::vector<std::vector<int>>>(
           Field(doc, "edges", "tree decomposition"), "edges")) {
    if (e.size() != 2) throw InputError("tree edges must have two endpoints");
    edges.emplace_back(e[0], e[1]);
  }
  const int root = doc.contains("root") ? As<int>(doc.at("root"), "root") : 0;
  return TreeDecomposition(std::move(bags), std::move(edges), root);
}

std::string TreeDecompositionToJson(const TreeDecomposition& td) {
  json edges = json::array();
  for (const auto& [u, v] : td.Edges()) edges.push_back({u, v});
  const json doc = {{"bags", td.Bags()}, {"edges", edges}, {"root", td.Root()}};
  return doc.dump() + "\n";
}

SparseDistribution ParseStrategy(std::string_view text) {
  const json doc = Parse(text, "strategy");
  std::vector<SparseDistribution::Entry> entries;
  for (const json& e : Field(doc, "support", "strategy")) {
    entries.push_back({As<JointAction>(Field(e, "action", "entry"), "action"),
                       As<double>(Field(e, "prob", "entry"), "prob")});
  }
  return SparseDistribution::FromEntries(std::move(entries));
}

std::string StrategyToJson(const SparseDistribution& pi) {
  json support = json::array();
  for (const auto& e : pi.Entries()) {
    support.push_back({{"action", e.action}, {"prob", e.prob}});
  }
  return json{{"support", support}}.dump() + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::shared_ptr<const Game> ResolveGame(const std::string& name_or_path) {
  if (IsBuiltinGameName(name_or_path)) return BuiltinGame(name_or_path);
  return ParseGame(ReadFile(name_or_path));
}

}  // namespace mase
