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
#include <cstddef>
#include <string>
#include <string_view>

#include "labgrade/core/types.hpp"
#include "labgrade/textsim/vector.hpp"

namespace labgrade::evaluator {

inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr std::size_t kFeatureCount = 10;

// Slot order is part of the schema; append only, and bump the version.
enum class Feature : std::size_t {
  kLineCount,
  kTokenCount,
  kUniqueIdentifierCount,
  kMaxNestingDepth,
  kBranchKeywordCount,
  kCommentRatio,
  kMeanLineLength,
  kQaSimilarity,
  kRubricSimilarity,
  kDifficultyOrdinal,
};

std::string_view feature_name(Feature f);
std::string_view feature_name(std::size_t index);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  int schema_version = kFeatureSchemaVersion;

  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  bool operator==(const FeatureVector&) const = default;
};

// Static metrics of a code text. Lines are the '\n'-separated pieces (a final
// newline does not start another line). Comments are '#' lines other than
// preprocessor directives, '//' and '/* */'; string literals are skipped when
// looking for comment markers.
struct CodeMetrics {
  std::size_t line_count = 0;
  std::size_t token_count = 0;             // words, numbers, string literals, punctuation marks
  std::size_t unique_identifier_count = 0; // distinct names, language keywords excluded
  std::size_t max_nesting_depth = 0;       // max(bracket depth, indent / 4) over the text
  std::size_t branch_keyword_count = 0;
  std::size_t comment_lines = 0;           // lines whose first non-blank content is a comment
  double comment_ratio = 0.0;              // comment_lines / max(1, line_count)
  double mean_line_length = 0.0;           // over non-blank lines, trailing blanks removed
};

CodeMetrics measure_code(std::string_view code);

// True for the branch words counted as a cyclomatic proxy:
// if elif else for while case match except catch and or.
bool is_branch_keyword(std::string_view word);

// Vectorizer the evaluator uses for its two similarity slots: TF-IDF with
// empty statistics, i.e. log-scaled term frequency only. Independent of any
// corpus, so a model trained offline sees the same features when served.
const textsim::Vectorizer& feature_vectorizer();

FeatureVector extract_features(std::string_view code, std::string_view question, std::string_view rubric,
                               Difficulty difficulty, const textsim::Vectorizer& vectorizer);

}  // namespace labgrade::evaluator
