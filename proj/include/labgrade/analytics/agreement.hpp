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
#include <utility>

#include "labgrade/analytics/correlation.hpp"

namespace labgrade::analytics {

inline constexpr std::size_t kBandCount = 5;
// [0,20) [20,40) [40,60) [60,80) [80,100]
inline constexpr std::array<double, kBandCount + 1> kBandEdges = {0, 20, 40, 60, 80, 100};

using BandMatrix = std::array<std::array<std::size_t, kBandCount>, kBandCount>;

// Band index of a mark; marks outside [0, 100] are clamped first.
std::size_t mark_band(double mark);

struct KappaResult {
  double kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  BandMatrix confusion{};  // confusion[band of a][band of b]
};

// Cohen's kappa over the five mark bands. Computed from integer counts as
// (n * agree - sum r_i c_i) / (n^2 - sum r_i c_i), so it is exactly symmetric
// in its arguments. When every mark of both raters falls into one band the
// chance agreement is 1 and kappa is reported as 1.
KappaResult cohen_kappa(std::span<const double> a, std::span<const double> b);

struct AgreementReport {
  std::size_t n_pairs = 0;
  Correlation pearson;
  Correlation spearman;
  double cohen_kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  BandMatrix band_confusion{};  // rows: first mark of each pair
};

// Pairs are (ai_mark, faculty_mark). Throws Error(kTooFew) below two pairs.
AgreementReport agreement_report(std::span<const std::pair<double, double>> pairs);

}  // namespace labgrade::analytics
