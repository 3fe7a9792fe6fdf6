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

#include "labgrade/evaluator/cross_validate.hpp"

#include <cmath>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "sampling.hpp"

namespace labgrade::evaluator {

CvReport cross_validate(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config, int k,
                        std::uint64_t seed) {
  const std::size_t n = x.rows();
  if (n != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("{} feature rows but {} targets", n, y.size()));
  }
  const auto folds = static_cast<std::size_t>(std::max(k, 0));
  const std::size_t largest = folds == 0 ? 0 : (n + folds - 1) / folds;
  if (k < 2 || n < folds || n - largest < 2) {
    throw Error(ErrorCode::kTooFewRows, fmt::format("{}-fold cross-validation over {} rows", k, n),
                {fmt::format("rows={}", n), fmt::format("folds={}", k)});
  }
  validate_config(config);

  std::mt19937_64 rng(seed);
  const auto order = detail::partial_shuffle(rng, n, n);

  CvReport report;
  report.folds = k;
  report.seed = seed;
  report.rows.resize(n);
  std::size_t begin = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t size = n / folds + (f < n % folds ? 1 : 0);
    const std::size_t end = begin + size;

    FeatureMatrix train_x;
    train_x.cols = x.cols;
    std::vector<double> train_y;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= begin && i < end) continue;
      train_x.push_back(x.row(order[i]));
      train_y.push_back(y[order[i]]);
    }
    const GbtModel model = train_gbt(train_x, train_y, config, seed);

    double sse = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t r = order[i];
      CvRow& row = report.rows[r];
      row.row = r;
      row.fold = static_cast<int>(f);
      row.actual = y[r];
      row.predicted = predict(model, x.row(r));
      row.error = row.predicted - row.actual;
      sse += row.error * row.error;
    }
    report.fold_rmse.push_back(std::sqrt(sse / static_cast<double>(size)));
    begin = end;
  }

  double rmse_total = 0.0;
  for (double r : report.fold_rmse) rmse_total += r;
  report.mean_rmse = rmse_total / static_cast<double>(folds);

  double mean_actual = 0.0;
  for (const auto& r : report.rows) mean_actual += r.actual;
  mean_actual /= static_cast<double>(n);
  double sse = 0.0, sst = 0.0;
  for (const auto& r : report.rows) {
    sse += r.error * r.error;
    sst += (r.actual - mean_actual) * (r.actual - mean_actual);
  }
  report.pooled_rmse = std::sqrt(sse / static_cast<double>(n));
  if (sst > 0.0) {
    report.pooled_r2 = 1.0 - sse / sst;
  } else {
    report.pooled_r2 = sse == 0.0 ? 1.0 : 0.0;
  }
  return report;
}

}  // namespace labgrade::evaluator
