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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "labgrade/evaluator/features.hpp"

namespace labgrade::evaluator {

struct GbtConfig {
  int n_trees = 500;
  int max_depth = 6;
  double learning_rate = 0.05;
  double subsample = 0.8;
  double colsample = 0.8;
  std::size_t min_rows_per_leaf = 2;

  bool operator==(const GbtConfig&) const = default;
};

// Throws Error(kValidationFailed) naming the bad fields.
void validate_config(const GbtConfig& config);

// Leaf when feature < 0. Rows with x[feature] < threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// nodes[0] is the root.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  double leaf_value(std::span<const double> x) const;
  int depth() const;
  bool operator==(const RegressionTree&) const = default;
};

struct GbtModel {
  std::vector<RegressionTree> trees;
  double base_prediction = 0.0;
  double learning_rate = 0.05;
  int n_trees = 0;
  int max_depth = 6;
  double subsample = 0.8;
  double colsample = 0.8;
  std::uint64_t seed = 42;
  int feature_schema_version = kFeatureSchemaVersion;
  std::size_t feature_count = kFeatureCount;
  std::size_t training_rows = 0;

  bool operator==(const GbtModel&) const = default;
};

// Row-major design matrix.
struct FeatureMatrix {
  std::size_t cols = 0;
  std::vector<double> values;

  std::size_t rows() const { return cols == 0 ? 0 : values.size() / cols; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
  void push_back(std::span<const double> r);

  static FeatureMatrix from_features(std::span<const FeatureVector> rows);
};

// Least-squares gradient boosting. base_prediction is the target mean; each
// round draws a row subsample (without replacement) and a column subsample
// from a mt19937_64 seeded with `seed`, fits a tree to the current residuals by
// exact greedy variance-reduction splits, and stores the mean residual in
// each leaf. Split candidates are midpoints of adjacent distinct values; a
// split needs min_rows_per_leaf rows on each side; equal gains go to the
// lower feature index, then the lower threshold.
//
// Throws Error(kTooFewRows) below two rows, Error(kNonFiniteFeature) for a
// NaN or infinite feature or target, Error(kLengthMismatch) when targets and
// rows disagree.
GbtModel train_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config, std::uint64_t seed);

// base + learning_rate * (sum of leaf values over the first tree_limit trees),
// unclamped.
double predict_raw(const GbtModel& model, std::span<const double> x, std::size_t tree_limit = SIZE_MAX);

// predict_raw clamped to [0, 100]. Throws Error(kSchemaMismatch) when the
// vector's schema or width differs from the model's.
double predict(const GbtModel& model, const FeatureVector& fv);
double predict(const GbtModel& model, std::span<const double> x);

}  // namespace labgrade::evaluator
