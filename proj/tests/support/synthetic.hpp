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

// Seeded synthetic data for evaluator and pipeline tests. Normal deviates use
// Box-Muller over mt19937_64 so the data is identical on every platform.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "labgrade/core/dataset.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/gbt.hpp"

namespace synth {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

struct Regression {
  labgrade::evaluator::FeatureMatrix x;
  std::vector<double> y;
};

// Ten uniform [0, 1) columns; the target is linear in the first five plus
// N(0, sigma) noise, clamped to the mark range.
inline Regression linear_dataset(std::size_t n, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Regression d;
  d.x.cols = 10;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(10);
    for (auto& v : row) v = uniform01(rng);
    const double signal = 10 + 30 * row[0] + 25 * row[1] + 20 * row[2] + 10 * row[3] + 5 * row[4];
    d.x.push_back(row);
    d.y.push_back(std::clamp(signal + sigma * gaussian(rng), 0.0, 100.0));
  }
  return d;
}

// Code-like text with a controllable amount of structure.
inline std::string synthetic_code(std::mt19937_64& rng) {
  const int functions = 1 + static_cast<int>(rng() % 4);
  std::string code;
  for (int f = 0; f < functions; ++f) {
    if (rng() % 2 == 0) code += "# helper " + std::to_string(f) + " for the lab task\n";
    code += "def step_" + std::to_string(f) + "(data, k):\n";
    const int statements = 1 + static_cast<int>(rng() % 8);
    int indent = 1;
    for (int s = 0; s < statements; ++s) {
      const std::string pad(static_cast<std::size_t>(4 * indent), ' ');
      switch (rng() % 5) {
        case 0:
          code += pad + "if k > " + std::to_string(rng() % 10) + " and data:\n";
          if (indent < 4) ++indent;
          break;
        case 1:
          code += pad + "for item_" + std::to_string(s) + " in data:\n";
          if (indent < 4) ++indent;
          break;
        case 2:
          code += pad + "# update the running estimate\n";
          break;
        default:
          code += pad + "value_" + std::to_string(s) + " = sum(data) / max(1, len(data)) * " +
                  std::to_string(rng() % 100) + "\n";
          if (indent > 1 && rng() % 2 == 0) --indent;
      }
    }
    code += std::string(static_cast<std::size_t>(4 * indent), ' ') + "return k\n";
  }
  return code;
}

// Labeled corpus for the training pipeline: answers are synthetic code and
// marksFaculty is linear in the extracted code features plus N(0, sigma)
// noise. Noise is drawn even when sigma is 0 so the texts do not change.
inline std::vector<labgrade::DatasetRecord> synthetic_corpus(std::size_t n, double sigma, std::uint64_t seed) {
  using namespace labgrade;
  using evaluator::Feature;
  std::mt19937_64 rng(seed);
  const std::array<Category, 3> cats = {Category::kEasy, Category::kMedium, Category::kHard};
  std::vector<DatasetRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    DatasetRecord r;
    r.id = "syn-" + std::to_string(i + 1);
    r.category = cats[rng() % 3];
    r.question = "Write helper steps that aggregate the data for task " + std::to_string(i + 1);
    r.answer = synthetic_code(rng);
    const auto fv = evaluator::extract_features(r.answer, r.question, r.answer, r.category,
                                                evaluator::feature_vectorizer());
    const double signal = 15.0 + 1.2 * fv[Feature::kLineCount] + 30.0 * fv[Feature::kCommentRatio] +
                          3.0 * fv[Feature::kBranchKeywordCount] + 2.0 * fv[Feature::kMaxNestingDepth] +
                          4.0 * fv[Feature::kDifficultyOrdinal];
    const double noise = sigma * gaussian(rng);
    r.marks_faculty = std::clamp(signal + noise, 0.0, 100.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace synth
