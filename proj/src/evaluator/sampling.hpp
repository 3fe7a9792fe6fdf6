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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace labgrade::evaluator::detail {

// Uniform draw in [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined and would make models differ across standard
// libraries; mt19937_64 itself is fully specified.
inline std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
  const auto bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<std::size_t>(v % bound);
}

// First `take` entries of a Fisher-Yates shuffle of [0, n).
inline std::vector<std::size_t> partial_shuffle(std::mt19937_64& rng, std::size_t n, std::size_t take) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < take; ++i) std::swap(idx[i], idx[i + draw_below(rng, n - i)]);
  idx.resize(take);
  return idx;
}

}  // namespace labgrade::evaluator::detail
