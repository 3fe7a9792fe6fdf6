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

#include "labgrade/analytics/agreement.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"

namespace labgrade::analytics {

std::size_t mark_band(double mark) {
  const double m = std::clamp(mark, 0.0, 100.0);
  for (std::size_t b = kBandCount - 1; b > 0; --b) {
    if (m >= kBandEdges[b]) return b;
  }
  return 0;
}

KappaResult cohen_kappa(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("lengths differ: {} vs {}", a.size(), b.size()));
  }
  if (a.size() < 2) throw Error(ErrorCode::kTooFew, fmt::format("need at least 2 pairs, got {}", a.size()));

  KappaResult r;
  std::array<unsigned long long, kBandCount> rows{}, cols{};
  unsigned long long agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t ba = mark_band(a[i]);
    const std::size_t bb = mark_band(b[i]);
    ++r.confusion[ba][bb];
    ++rows[ba];
    ++cols[bb];
    if (ba == bb) ++agree;
  }
  const auto n = static_cast<unsigned long long>(a.size());
  unsigned long long chance = 0;  // sum r_i c_i
  for (std::size_t k = 0; k < kBandCount; ++k) chance += rows[k] * cols[k];

  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  r.observed_agreement = static_cast<double>(agree) / static_cast<double>(n);
  r.expected_agreement = static_cast<double>(chance) / n2;
  if (chance == n * n) {
    r.kappa = 1.0;
  } else {
    const double num = static_cast<double>(n) * static_cast<double>(agree) - static_cast<double>(chance);
    r.kappa = num / (n2 - static_cast<double>(chance));
  }
  return r;
}

AgreementReport agreement_report(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) throw Error(ErrorCode::kTooFew, fmt::format("need at least 2 pairs, got {}", pairs.size()));
  // Sorting makes every sum independent of input order.
  std::vector<std::pair<double, double>> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ai, faculty;
  ai.reserve(sorted.size());
  faculty.reserve(sorted.size());
  for (const auto& [x, y] : sorted) {
    ai.push_back(x);
    faculty.push_back(y);
  }
  AgreementReport r;
  r.n_pairs = sorted.size();
  r.pearson = pearson(ai, faculty);
  r.spearman = spearman(ai, faculty);
  const auto k = cohen_kappa(ai, faculty);
  r.cohen_kappa = k.kappa;
  r.observed_agreement = k.observed_agreement;
  r.expected_agreement = k.expected_agreement;
  r.band_confusion = k.confusion;
  return r;
}

}  // namespace labgrade::analytics
