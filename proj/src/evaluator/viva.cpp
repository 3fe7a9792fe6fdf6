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

#include "labgrade/evaluator/viva.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/textsim/tokenize.hpp"

namespace labgrade::evaluator {

VivaScore score_viva_answer(std::string_view answer, std::string_view rubric, const textsim::Vectorizer& vectorizer) {
  if (textsim::tokenize(rubric).empty()) throw Error(ErrorCode::kEmptyRubric, "viva rubric has no words");

  const double similarity = textsim::cosine(vectorizer.vectorize(answer), vectorizer.vectorize(rubric));
  VivaScore result;
  result.score = 100.0 * similarity;
  const std::size_t tokens = textsim::tokenize(answer).size();
  if (tokens < kShortAnswerTokens && result.score > kShortAnswerCap) {
    result.score = kShortAnswerCap;
    result.feedback = fmt::format("answer has {} words; short answers are capped at {:.0f}", tokens, kShortAnswerCap);
  } else if (result.score >= 70.0) {
    result.feedback = "covers the expected points";
  } else if (result.score >= 40.0) {
    result.feedback = "partly covers the expected points";
  } else {
    result.feedback = "misses most of the expected points";
  }
  return result;
}

}  // namespace labgrade::evaluator
