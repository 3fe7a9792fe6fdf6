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

#include "labgrade/evaluator/gbt.hpp"

namespace labgrade::evaluator {

struct CvRow {
  std::size_t row = 0;  // index into the input
  int fold = 0;
  double actual = 0.0;
  double predicted = 0.0;  // clamped prediction of the model that held the row out
  double error = 0.0;      // predicted - actual
};

struct CvReport {
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<double> fold_rmse;
  double mean_rmse = 0.0;    // mean of fold_rmse
  double pooled_rmse = 0.0;  // over all held-out predictions
  // 1 - SSE/SST over all held-out predictions. With constant targets SST is 0;
  // the report then gives 1 for a perfect fit and 0 otherwise.
  double pooled_r2 = 0.0;
  std::vector<CvRow> rows;  // input order
};

// Rows are shuffled with a mt19937_64 seeded by `seed` and cut into k
// contiguous folds; the first (n mod k) folds get one extra row. Each fold is
// predicted by a model trained on the others with the same config and seed.
// Throws Error(kTooFewRows) unless k >= 2, n >= k and every training split has
// at least two rows.
CvReport cross_validate(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config, int k,
                        std::uint64_t seed);

}  // namespace labgrade::evaluator
