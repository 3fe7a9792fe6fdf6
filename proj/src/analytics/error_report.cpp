// Copyright 2026 The labgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "labgrade/analytics/error_report.hpp"

#include <algorithm>
#include <cmath>

#include "labgrade/core/errors.hpp"

namespace labgrade::analytics {

long error_bin(double deviation) { return static_cast<long>(std::floor(deviation + 0.5)); }

ErrorReport error_report(std::span<const ErrorRow> rows, std::size_t k) {
  if (rows.empty()) throw Error(ErrorCode::kEmpty, "error report needs at least one row");

  ErrorReport r;
  r.n = rows.size();
  std::vector<WorstCase> cases;
  cases.reserve(rows.size());
  std::vector<double> deviations;
  deviations.reserve(rows.size());
  std::size_t close = 0;
  for (const auto& row : rows) {
    const double d = row.predicted - row.actual;
    deviations.push_back(d);
    cases.push_back({row.id, row.actual, row.predicted, d, row.topic_tag});
    const long bin = error_bin(d);
    if (bin < kErrorBinMin) {
      ++r.underflow;
    } else if (bin > kErrorBinMax) {
      ++r.overflow;
    } else {
      ++r.histogram[static_cast<std::size_t>(bin - kErrorBinMin)];
    }
    if (std::fabs(d) <= kCloseBand) ++close;
  }
  std::sort(deviations.begin(), deviations.end());
  double total = 0.0;
  for (double d : deviations) total += d;
  r.mean_error = total / static_cast<double>(rows.size());
  r.share_within_5 = static_cast<double>(close) / static_cast<double>(rows.size());

  const std::size_t take = std::min(k, cases.size());
  auto worse = [](const WorstCase& a, const WorstCase& b) {
    const double da = std::fabs(a.deviation), db = std::fabs(b.deviation);
    if (da != db) return da > db;
    if (a.id != b.id) return a.id < b.id;
    return a.deviation < b.deviation;
  };
  std::partial_sort(cases.begin(), cases.begin() + static_cast<std::ptrdiff_t>(take), cases.end(), worse);
  cases.resize(take);
  r.worst = std::move(cases);
  return r;
}

}  // namespace labgrade::analytics
