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
#include <initializer_list>
#include <limits>
#include <string_view>

namespace labgrade::genpipe {

// SplitMix64. Fully specified output sequence, unlike the standard
// distributions, so generated text is identical across toolchains.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform index in [0, n); n must be positive.
  std::size_t below(std::size_t n);

 private:
  std::uint64_t state_;
};

std::uint64_t hash_text(std::string_view text);

// Order-sensitive combination of seed material.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace labgrade::genpipe
