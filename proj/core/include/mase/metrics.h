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

#ifndef MASE_METRICS_H_
#define MASE_METRICS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mase {

// One row of a run's metric series. Regrets that do not apply to a run are
// NaN.
struct MetricsRow {
  long long t = 0;
  double exploitability = 0.0;
  double coalition_exploitability = 0.0;
  double social_welfare = 0.0;
  double correlator_regret = 0.0;
  double deviator_regret = 0.0;
};

inline constexpr char kMetricsHeader[] =
    "t,exploitability,coalition_exploitability,social_welfare,"
    "correlator_regret,deviator_regret";

// Shortest round-trip-safe rendering with 9 significant digits, independent
// of the C++ locale. NaN renders as "nan".
std::string FormatNumber(double value);

void WriteMetricsCsv(const std::vector<MetricsRow>& rows, std::ostream& out);
void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::string& path);
// Inverse of WriteMetricsCsv. Throws InputError on malformed input.
std::vector<MetricsRow> ReadMetricsCsv(std::istream& in);

}  // namespace mase

#endif  // MASE_METRICS_H_
