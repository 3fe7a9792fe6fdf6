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

#include "labgrade/analytics/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/simd/kernels.hpp"

namespace labgrade::analytics {
namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("lengths differ: {} vs {}", x.size(), y.size()));
  }
  if (x.size() < 2) throw Error(ErrorCode::kTooFew, fmt::format("need at least 2 points, got {}", x.size()));
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

}  // namespace

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (constant(x) || constant(y)) return {0.0, true};

  const double n = static_cast<double>(x.size());
  std::vector<double> cx(x.size()), cy(y.size());
  simd::shift(x, simd::sum(x) / n, cx);
  simd::shift(y, simd::sum(y) / n, cy);
  const double sxy = simd::dot(cx, cy);
  const double denom = std::sqrt(simd::sum_squares(cx) * simd::sum_squares(cy));
  if (denom == 0.0) return {0.0, true};
  return {std::clamp(sxy / denom, -1.0, 1.0), false};
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean(i+1 .. j+1).
    const double rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

}  // namespace labgrade::analytics
