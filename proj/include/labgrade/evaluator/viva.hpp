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
#include <string>
#include <string_view>

#include "labgrade/textsim/vector.hpp"

namespace labgrade::evaluator {

inline constexpr std::size_t kShortAnswerTokens = 10;
inline constexpr double kShortAnswerCap = 40.0;

struct VivaScore {
  double score = 0.0;
  std::string feedback;
};

// 100 * cosine(answer, rubric); answers under kShortAnswerTokens tokens are
// capped at kShortAnswerCap. Throws Error(kEmptyRubric) when the rubric has no
// tokens.
VivaScore score_viva_answer(std::string_view answer, std::string_view rubric, const textsim::Vectorizer& vectorizer);

}  // namespace labgrade::evaluator
