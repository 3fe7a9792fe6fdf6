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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace labgrade::analytics {

inline constexpr int kErrorBinMin = -15;
inline constexpr int kErrorBinMax = 15;
inline constexpr std::size_t kErrorBinCount = kErrorBinMax - kErrorBinMin + 1;
inline constexpr double kCloseBand = 5.0;

struct ErrorRow {
  std::string id;
  double actual = 0.0;
  double predicted = 0.0;
  std::string topic_tag;
};

struct WorstCase {
  std::string id;
  double actual = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;  // predicted - actual
  std::string topic_tag;

  bool operator==(const WorstCase&) const = default;
};

struct ErrorReport {
  std::size_t n = 0;
  // histogram[i] counts deviations that round (half up) to kErrorBinMin + i.
  std::array<std::size_t, kErrorBinCount> histogram{};
  std::size_t underflow = 0;
  std::size_t overflow = 0;
  double mean_error = 0.0;
  double share_within_5 = 0.0;  // |deviation| <= 5
  std::vector<WorstCase> worst;  // |deviation| descending, then id ascending
};

// Integer bin of a deviation: floor(d + 0.5).
long error_bin(double deviation);

// k is capped at the row count. Throws Error(kEmpty) for no rows.
ErrorReport error_report(std::span<const ErrorRow> rows, std::size_t k);

}  // namespace labgrade::analytics
