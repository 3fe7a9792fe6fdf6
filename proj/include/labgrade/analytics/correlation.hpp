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

#include <span>
#include <vector>

namespace labgrade::analytics {

struct Correlation {
  double value = 0.0;
  bool zero_variance = false;  // one side constant; value is then 0

  bool operator==(const Correlation&) const = default;
};

// Sample Pearson correlation, clamped to [-1, 1]. Throws
// Error(kLengthMismatch) for unequal lengths and Error(kTooFew) below two
// points.
Correlation pearson(std::span<const double> x, std::span<const double> y);

// Pearson over average ranks.
Correlation spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> x);

}  // namespace labgrade::analytics
