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

#include "labgrade/evaluator/grading.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/core/json_io.hpp"

namespace labgrade::evaluator {
namespace {

struct SlotScore {
  Feature slot;
  double score;
};

void check_map(const PiecewiseMap& m, std::string_view name, std::vector<std::string>& bad) {
  bool ok = !m.knots.empty();
  for (std::size_t i = 1; ok && i < m.knots.size(); ++i) ok = m.knots[i].first > m.knots[i - 1].first;
  for (const auto& [x, y] : m.knots) ok = ok && std::isfinite(x) && std::isfinite(y);
  if (!ok) bad.emplace_back(name);
}

}  // namespace

double PiecewiseMap::operator()(double x) const {
  if (knots.empty()) return 0.0;
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double v, const std::pair<double, double>& k) { return v < k.first; });
  const auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

const GradingConfig& default_grading_config() {
  static const GradingConfig config{
      {{{0.0, 40.0}, {0.1, 80.0}, {0.25, 100.0}, {0.5, 90.0}, {1.0, 50.0}}},
      {{{0.0, 0.0}, {10.0, 70.0}, {20.0, 100.0}, {80.0, 100.0}, {120.0, 40.0}, {200.0, 0.0}}},
      {{{0.0, 100.0}, {3.0, 100.0}, {5.0, 60.0}, {8.0, 0.0}}},
      {{{0.0, 100.0}, {10.0, 100.0}, {25.0, 50.0}, {50.0, 0.0}}},
  };
  return config;
}

void validate_grading_config(const GradingConfig& config) {
  std::vector<std::string> bad;
  check_map(config.comment_ratio, "comment_ratio", bad);
  check_map(config.mean_line_length, "mean_line_length", bad);
  check_map(config.nesting_depth, "nesting_depth", bad);
  check_map(config.branch_count, "branch_count", bad);
  if (!bad.empty()) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("invalid grading maps: {}", fmt::join(bad, ", ")), bad);
  }
}

void to_json(nlohmann::json& j, const PiecewiseMap& m) {
  j = nlohmann::json::array();
  for (const auto& [x, y] : m.knots) j.push_back({x, y});
}

void from_json(const nlohmann::json& j, PiecewiseMap& m) {
  m.knots.clear();
  for (const auto& k : j) m.knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
}

void to_json(nlohmann::json& j, const GradingConfig& c) {
  j = {{"comment_ratio", c.comment_ratio},
       {"mean_line_length", c.mean_line_length},
       {"nesting_depth", c.nesting_depth},
       {"branch_count", c.branch_count}};
}

void from_json(const nlohmann::json& j, GradingConfig& c) {
  j.at("comment_ratio").get_to(c.comment_ratio);
  j.at("mean_line_length").get_to(c.mean_line_length);
  j.at("nesting_depth").get_to(c.nesting_depth);
  j.at("branch_count").get_to(c.branch_count);
}

void to_json(nlohmann::json& j, const GradeBreakdown& g) {
  j = {{"correctness_score", g.correctness_score},
       {"readability_score", g.readability_score},
       {"complexity_score", g.complexity_score},
       {"weights", g.weights},
       {"final", g.final_score},
       {"feedback", g.feedback}};
}

std::string_view score_band(double score) {
  if (score >= 85.0) return "excellent";
  if (score >= 70.0) return "good";
  if (score >= 50.0) return "fair";
  return "needs work";
}

double weighted_final(std::span<const double> scores, std::span<const double> weights) {
  if (scores.size() != weights.size()) throw Error(ErrorCode::kLengthMismatch, "scores and weights differ in length");
  std::vector<double> products(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) products[i] = scores[i] * weights[i];
  std::sort(products.begin(), products.end());
  double total = 0.0;
  for (double p : products) total += p;
  return std::clamp(total, 0.0, 100.0);
}

double readability_score(const FeatureVector& fv, const GradingConfig& config) {
  return (config.comment_ratio(fv[Feature::kCommentRatio]) + config.mean_line_length(fv[Feature::kMeanLineLength])) /
         2.0;
}

double complexity_score(const FeatureVector& fv, const GradingConfig& config) {
  return (config.nesting_depth(fv[Feature::kMaxNestingDepth]) + config.branch_count(fv[Feature::kBranchKeywordCount])) /
         2.0;
}

GradeBreakdown grade_features(const FeatureVector& fv, const GbtModel& model, const GradeWeights& weights,
                              const GradingConfig& config) {
  if (!weights_valid(weights)) {
    throw Error(ErrorCode::kInvalidWeights,
                fmt::format("weights ({}, {}, {}) must be nonnegative and sum to 1", weights.correctness,
                            weights.readability, weights.complexity));
  }
  GradeBreakdown g;
  g.correctness_score = predict(model, fv);
  g.readability_score = readability_score(fv, config);
  g.complexity_score = complexity_score(fv, config);
  g.weights = weights;
  const double scores[] = {g.correctness_score, g.readability_score, g.complexity_score};
  const double w[] = {weights.correctness, weights.readability, weights.complexity};
  g.final_score = weighted_final(scores, w);

  const std::pair<std::string_view, double> dims[] = {
      {"correctness", g.correctness_score}, {"readability", g.readability_score}, {"complexity", g.complexity_score}};
  for (const auto& [name, score] : dims) g.feedback.push_back(fmt::format("{}: {:.1f} ({})", name, score, score_band(score)));

  std::vector<SlotScore> slots = {
      {Feature::kCommentRatio, config.comment_ratio(fv[Feature::kCommentRatio])},
      {Feature::kMeanLineLength, config.mean_line_length(fv[Feature::kMeanLineLength])},
      {Feature::kMaxNestingDepth, config.nesting_depth(fv[Feature::kMaxNestingDepth])},
      {Feature::kBranchKeywordCount, config.branch_count(fv[Feature::kBranchKeywordCount])},
      {Feature::kRubricSimilarity, 100.0 * fv[Feature::kRubricSimilarity]},
  };
  std::stable_sort(slots.begin(), slots.end(), [](const SlotScore& a, const SlotScore& b) { return a.score < b.score; });
  g.feedback.push_back(fmt::format("weakest: {} ({:.1f}), {} ({:.1f})", feature_name(slots[0].slot), slots[0].score,
                                   feature_name(slots[1].slot), slots[1].score));
  return g;
}

GradeBreakdown grade_submission(const Submission& submission, const Allocation& allocation, Difficulty difficulty,
                                const GbtModel& model, const GradeWeights& weights,
                                const textsim::Vectorizer& vectorizer, const GradingConfig& config) {
  const FeatureVector fv = extract_features(submission.code_text, allocation.question_text, allocation.rubric_answer,
                                            difficulty, vectorizer);
  return grade_features(fv, model, weights, config);
}

}  // namespace labgrade::evaluator
