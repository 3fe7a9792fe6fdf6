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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "labgrade/core/types.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/gbt.hpp"

namespace labgrade::evaluator {

// Piecewise-linear map through (x, y) knots with ascending x; flat beyond the
// end knots.
struct PiecewiseMap {
  std::vector<std::pair<double, double>> knots;

  double operator()(double x) const;
  bool operator==(const PiecewiseMap&) const = default;
};

// Rescaling tables for the readability and complexity dimensions.
struct GradingConfig {
  PiecewiseMap comment_ratio;     // share of comment lines
  PiecewiseMap mean_line_length;  // characters
  PiecewiseMap nesting_depth;
  PiecewiseMap branch_count;

  bool operator==(const GradingConfig&) const = default;
};

const GradingConfig& default_grading_config();

// Throws Error(kValidationFailed) for an empty map or non-ascending knots.
void validate_grading_config(const GradingConfig& config);

void to_json(nlohmann::json& j, const PiecewiseMap& m);
void from_json(const nlohmann::json& j, PiecewiseMap& m);
void to_json(nlohmann::json& j, const GradingConfig& c);
void from_json(const nlohmann::json& j, GradingConfig& c);

struct GradeBreakdown {
  double correctness_score = 0.0;
  double readability_score = 0.0;
  double complexity_score = 0.0;
  GradeWeights weights;
  double final_score = 0.0;
  std::vector<std::string> feedback;

  bool operator==(const GradeBreakdown&) const = default;
};

void to_json(nlohmann::json& j, const GradeBreakdown& g);

// "excellent" >= 85, "good" >= 70, "fair" >= 50, else "needs work".
std::string_view score_band(double score);

// sum(weight_i * score_i) clamped to [0, 100]. Products are added in sorted
// order so that the result does not depend on how the pairs are listed.
double weighted_final(std::span<const double> scores, std::span<const double> weights);

// readability = mean of the comment-ratio and line-length maps; complexity =
// mean of the nesting and branch maps.
double readability_score(const FeatureVector& fv, const GradingConfig& config);
double complexity_score(const FeatureVector& fv, const GradingConfig& config);

// Throws Error(kInvalidWeights) when weights are negative or do not sum to 1,
// and propagates kSchemaMismatch from predict.
GradeBreakdown grade_features(const FeatureVector& fv, const GbtModel& model, const GradeWeights& weights,
                              const GradingConfig& config = default_grading_config());

GradeBreakdown grade_submission(const Submission& submission, const Allocation& allocation, Difficulty difficulty,
                                const GbtModel& model, const GradeWeights& weights,
                                const textsim::Vectorizer& vectorizer = feature_vectorizer(),
                                const GradingConfig& config = default_grading_config());

}  // namespace labgrade::evaluator
