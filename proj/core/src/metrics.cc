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

#include "mase/metrics.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mase/common.h"

namespace mase {
namespace {

double ParseNumber(const std::string& field) {
  if (field == "nan") return std::nan("");
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw InputError("malformed metrics field '" + field + "'");
  }
  return value;
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 9);
  return std::string(buffer, ptr);
}

void WriteMetricsCsv(const std::vector<MetricsRow>& rows, std::ostream& out) {
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.t << ',' << FormatNumber(r.exploitability) << ','
        << FormatNumber(r.coalition_exploitability) << ','
        << FormatNumber(r.social_welfare) << ','
        << FormatNumber(r.correlator_regret) << ','
        << FormatNumber(r.deviator_regret) << '\n';
  }
}

void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  WriteMetricsCsv(rows, out);
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::vector<MetricsRow> ReadMetricsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw InputError("metrics file does not start with the expected header");
  }
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw InputError("metrics row has " + std::to_string(fields.size()) +
                       " fields, expected 6");
    }
    MetricsRow row;
    row.t = static_cast<long long>(ParseNumber(fields[0]));
    row.exploitability = ParseNumber(fields[1]);
    row.coalition_exploitability = ParseNumber(fields[2]);
    row.social_welfare = ParseNumber(fields[3]);
    row.correlator_regret = ParseNumber(fields[4]);
    row.deviator_regret = ParseNumber(fields[5]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mase
