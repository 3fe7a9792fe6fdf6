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

#include "labgrade/evaluator/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/simd/kernels.hpp"
#include "sampling.hpp"

namespace labgrade::evaluator {
namespace {

// A split must remove at least this share of the node's sum of squared
// residuals; anything smaller is rounding noise.
constexpr double kRelativeMinGain = 1e-10;

// Sorted sample of `take` indices out of [0, n).
std::vector<std::size_t> sample_indices(std::mt19937_64& rng, std::size_t n, std::size_t take) {
  auto idx = detail::partial_shuffle(rng, n, take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::size_t fraction_of(double fraction, std::size_t n) {
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))), 1, n);
}

struct NodeStats {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_squares = 0.0;
};

struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

struct ScanState {
  std::size_t left_count = 0;
  double left_sum = 0.0;
  double last_value = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, const std::vector<std::vector<std::size_t>>& sorted_by_feature,
              const GbtConfig& config)
      : x_(x), sorted_(sorted_by_feature), config_(config) {}

  RegressionTree build(std::span<const double> residuals, std::span<const std::size_t> rows,
                       std::span<const std::size_t> features) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    node_of_.assign(x_.rows(), -1);
    for (std::size_t r : rows) node_of_[r] = 0;

    std::vector<int> frontier = {0};
    for (int depth = 0; depth < config_.max_depth && !frontier.empty(); ++depth) {
      frontier = grow_level(tree, frontier, residuals, features);
    }

    // Leaf values: mean residual of the sampled rows routed to each leaf,
    // summed in row order.
    std::vector<NodeStats> stats(tree.nodes.size());
    for (std::size_t r : rows) {
      auto& s = stats[static_cast<std::size_t>(node_of_[r])];
      ++s.count;
      s.sum += residuals[r];
    }
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      if (tree.nodes[n].is_leaf() && stats[n].count > 0) {
        tree.nodes[n].value = stats[n].sum / static_cast<double>(stats[n].count);
      }
    }
    return tree;
  }

 private:
  std::vector<int> grow_level(RegressionTree& tree, const std::vector<int>& frontier,
                              std::span<const double> residuals, std::span<const std::size_t> features) {
    const std::size_t node_total = tree.nodes.size();
    std::vector<NodeStats> stats(node_total);
    for (std::size_t r = 0; r < node_of_.size(); ++r) {
      if (node_of_[r] < 0) continue;
      auto& s = stats[static_cast<std::size_t>(node_of_[r])];
      ++s.count;
      s.sum += residuals[r];
      s.sum_squares += residuals[r] * residuals[r];
    }

    std::vector<bool> active(node_total, false);
    for (int n : frontier) active[static_cast<std::size_t>(n)] = stats[static_cast<std::size_t>(n)].count >= 2 * config_.min_rows_per_leaf;

    std::vector<SplitCandidate> best(node_total);
    std::vector<ScanState> scan(node_total);
    for (std::size_t f : features) {
      std::fill(scan.begin(), scan.end(), ScanState{});
      for (std::size_t r : sorted_[f]) {
        const int node = node_of_[r];
        if (node < 0 || !active[static_cast<std::size_t>(node)]) continue;
        const auto n = static_cast<std::size_t>(node);
        auto& st = scan[n];
        const double v = x_.values[r * x_.cols + f];
        const std::size_t right_count = stats[n].count - st.left_count;
        if (st.left_count >= config_.min_rows_per_leaf && right_count >= config_.min_rows_per_leaf &&
            v > st.last_value) {
          const double right_sum = stats[n].sum - st.left_sum;
          const double gain = st.left_sum * st.left_sum / static_cast<double>(st.left_count) +
                              right_sum * right_sum / static_cast<double>(right_count) -
                              stats[n].sum * stats[n].sum / static_cast<double>(stats[n].count);
          if (gain > best[n].gain) {
            double threshold = st.last_value + (v - st.last_value) / 2.0;
            if (!(threshold > st.last_value)) threshold = v;
            best[n] = {gain, static_cast<int>(f), threshold};
          }
        }
        ++st.left_count;
        st.left_sum += residuals[r];
        st.last_value = v;
      }
    }

    std::vector<int> next;
    for (int node : frontier) {
      const auto n = static_cast<std::size_t>(node);
      if (!active[n] || best[n].feature < 0 || best[n].gain <= kRelativeMinGain * stats[n].sum_squares) continue;
      const int left = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& split = tree.nodes[n];
      split.feature = best[n].feature;
      split.threshold = best[n].threshold;
      split.left = left;
      split.right = left + 1;
      next.push_back(left);
      next.push_back(left + 1);
    }
    for (std::size_t r = 0; r < node_of_.size(); ++r) {
      if (node_of_[r] < 0) continue;
      const auto& node = tree.nodes[static_cast<std::size_t>(node_of_[r])];
      if (node.is_leaf() || static_cast<std::size_t>(node_of_[r]) >= node_total) continue;
      const double v = x_.values[r * x_.cols + static_cast<std::size_t>(node.feature)];
      node_of_[r] = v < node.threshold ? node.left : node.right;
    }
    return next;
  }

  const FeatureMatrix& x_;
  const std::vector<std::vector<std::size_t>>& sorted_;
  const GbtConfig& config_;
  std::vector<int> node_of_;
};

void check_finite(const FeatureMatrix& x, std::span<const double> y) {
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    if (!std::isfinite(x.values[i])) {
      throw Error(ErrorCode::kNonFiniteFeature,
                  fmt::format("row {} feature {} is not finite", i / x.cols, i % x.cols),
                  {std::to_string(i / x.cols), std::to_string(i % x.cols)});
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw Error(ErrorCode::kNonFiniteFeature, fmt::format("target of row {} is not finite", i),
                  {std::to_string(i), "target"});
    }
  }
}

}  // namespace

void validate_config(const GbtConfig& config) {
  std::vector<std::string> bad;
  if (config.n_trees < 0) bad.emplace_back("n_trees");
  if (config.max_depth < 0) bad.emplace_back("max_depth");
  if (!(config.learning_rate > 0.0 && config.learning_rate <= 1.0)) bad.emplace_back("learning_rate");
  if (!(config.subsample > 0.0 && config.subsample <= 1.0)) bad.emplace_back("subsample");
  if (!(config.colsample > 0.0 && config.colsample <= 1.0)) bad.emplace_back("colsample");
  if (config.min_rows_per_leaf < 1) bad.emplace_back("min_rows_per_leaf");
  if (!bad.empty()) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("invalid GBT config: {}", fmt::join(bad, ", ")), bad);
  }
}

double RegressionTree::leaf_value(std::span<const double> x) const {
  if (nodes.empty()) return 0.0;
  std::size_t n = 0;
  while (!nodes[n].is_leaf()) {
    n = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[n].feature)] < nodes[n].threshold ? nodes[n].left
                                                                                                   : nodes[n].right);
  }
  return nodes[n].value;
}

int RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> level(nodes.size(), 0);
  int deepest = 0;
  // Children always follow their parent in the node array.
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n].is_leaf()) continue;
    for (int child : {nodes[n].left, nodes[n].right}) {
      level[static_cast<std::size_t>(child)] = level[n] + 1;
      deepest = std::max(deepest, level[n] + 1);
    }
  }
  return deepest;
}

void FeatureMatrix::push_back(std::span<const double> r) {
  if (cols == 0 && values.empty()) cols = r.size();
  if (r.size() != cols) throw Error(ErrorCode::kLengthMismatch, "row width differs from matrix width");
  values.insert(values.end(), r.begin(), r.end());
}

FeatureMatrix FeatureMatrix::from_features(std::span<const FeatureVector> rows) {
  FeatureMatrix m;
  m.cols = kFeatureCount;
  m.values.reserve(rows.size() * kFeatureCount);
  for (const auto& fv : rows) m.values.insert(m.values.end(), fv.values.begin(), fv.values.end());
  return m;
}

GbtModel train_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config, std::uint64_t seed) {
  validate_config(config);
  const std::size_t n = x.rows();
  if (n != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} feature rows but {} targets", n, y.size()));
  }
  if (n < 2) throw Error(ErrorCode::kTooFewRows, fmt::format("training needs at least 2 rows, got {}", n));
  check_finite(x, y);

  GbtModel model;
  model.learning_rate = config.learning_rate;
  model.n_trees = config.n_trees;
  model.max_depth = config.max_depth;
  model.subsample = config.subsample;
  model.colsample = config.colsample;
  model.seed = seed;
  model.feature_count = x.cols;
  model.training_rows = n;
  model.base_prediction = simd::sum(y) / static_cast<double>(n);

  std::vector<std::vector<std::size_t>> sorted(x.cols);
  for (std::size_t f = 0; f < x.cols; ++f) {
    auto& order = sorted[f];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x.values[a * x.cols + f] < x.values[b * x.cols + f]; });
  }

  std::mt19937_64 rng(seed);
  TreeBuilder builder(x, sorted, config);
  // leaf_sum[i] is the running sum of leaf values for row i, so residuals
  // agree exactly with predict_raw.
  std::vector<double> leaf_sum(n, 0.0);
  std::vector<double> residuals(y.begin(), y.end());
  for (auto& r : residuals) r -= model.base_prediction;

  const std::size_t row_take = fraction_of(config.subsample, n);
  const std::size_t col_take = fraction_of(config.colsample, x.cols);
  model.trees.reserve(static_cast<std::size_t>(config.n_trees));
  for (int t = 0; t < config.n_trees; ++t) {
    const auto rows = sample_indices(rng, n, row_take);
    const auto cols = sample_indices(rng, x.cols, col_take);
    RegressionTree tree = builder.build(residuals, rows, cols);
    for (std::size_t i = 0; i < n; ++i) {
      leaf_sum[i] += tree.leaf_value(x.row(i));
      residuals[i] = y[i] - (model.base_prediction + model.learning_rate * leaf_sum[i]);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double predict_raw(const GbtModel& model, std::span<const double> x, std::size_t tree_limit) {
  const std::size_t count = std::min(tree_limit, model.trees.size());
  double total = 0.0;
  for (std::size_t t = 0; t < count; ++t) total += model.trees[t].leaf_value(x);
  return model.base_prediction + model.learning_rate * total;
}

double predict(const GbtModel& model, std::span<const double> x) {
  if (x.size() != model.feature_count) {
    throw Error(ErrorCode::kSchemaMismatch,
                fmt::format("model expects {} features, got {}", model.feature_count, x.size()));
  }
  return std::clamp(predict_raw(model, x), 0.0, 100.0);
}

double predict(const GbtModel& model, const FeatureVector& fv) {
  if (fv.schema_version != model.feature_schema_version) {
    throw Error(ErrorCode::kSchemaMismatch, fmt::format("model feature schema {} but vector schema {}",
                                                        model.feature_schema_version, fv.schema_version));
  }
  return predict(model, std::span<const double>(fv.values));
}

}  // namespace labgrade::evaluator
