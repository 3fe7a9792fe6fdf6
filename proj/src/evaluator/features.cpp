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

#include "labgrade/evaluator/features.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <unordered_set>

namespace labgrade::evaluator {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "line_count",        "token_count",     "unique_identifier_count", "max_nesting_depth", "branch_keyword_count",
    "comment_ratio",     "mean_line_length", "qa_similarity",          "rubric_similarity", "difficulty_ordinal"};

constexpr std::array<std::string_view, 11> kBranchWords = {"if",   "elif",  "else",  "for", "while", "case",
                                                           "match", "except", "catch", "and", "or"};

// Reserved words of the common lab languages; never counted as identifiers.
const std::unordered_set<std::string_view>& language_keywords() {
  static const std::unordered_set<std::string_view> words = {
      "if",      "elif",     "else",    "for",      "while",   "case",   "match",    "except", "catch",
      "and",     "or",       "not",     "in",       "is",      "def",    "return",   "class",  "import",
      "from",    "as",       "with",    "try",      "finally", "raise",  "pass",     "break",  "continue",
      "lambda",  "yield",    "None",    "True",     "False",   "global", "nonlocal", "del",    "assert",
      "async",   "await",    "int",     "float",    "double",  "char",   "void",     "bool",   "long",
      "short",   "unsigned", "signed",  "const",    "static",  "struct", "public",   "private", "protected",
      "new",     "delete",   "switch",  "default",  "do",      "goto",   "sizeof",   "typedef", "enum",
      "namespace", "using",  "template", "typename", "auto",   "include", "define",  "pragma", "throw",
      "throws",  "function", "var",     "let",      "true",    "false",  "null",     "nullptr", "this",
      "extends", "implements", "interface", "package", "final", "virtual", "override", "void"};
  return words;
}

constexpr std::array<std::string_view, 13> kDirectives = {"include", "define", "if",    "ifdef",  "ifndef",
                                                          "else",    "elif",   "endif", "pragma", "undef",
                                                          "error",   "warning", "line"};

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_directive(std::string_view rest) {
  std::size_t n = 0;
  while (n < rest.size() && std::isalpha(static_cast<unsigned char>(rest[n]))) ++n;
  const auto word = rest.substr(0, n);
  return std::find(kDirectives.begin(), kDirectives.end(), word) != kDirectives.end();
}

}  // namespace

std::string_view feature_name(Feature f) { return kNames[static_cast<std::size_t>(f)]; }

std::string_view feature_name(std::size_t index) {
  if (index >= kFeatureCount) throw std::out_of_range("feature index");
  return kNames[index];
}

bool is_branch_keyword(std::string_view word) {
  return std::find(kBranchWords.begin(), kBranchWords.end(), word) != kBranchWords.end();
}

CodeMetrics measure_code(std::string_view code) {
  CodeMetrics m;
  if (code.empty()) return m;
  if (code.back() == '\n') code.remove_suffix(1);

  std::unordered_set<std::string> identifiers;
  std::size_t depth = 0;
  bool in_block = false;
  std::size_t nonblank_lines = 0;
  std::size_t nonblank_chars = 0;

  std::size_t start = 0;
  while (start <= code.size()) {
    const std::size_t end = std::min(code.find('\n', start), code.size());
    std::string_view line = code.substr(start, end - start);
    start = end + 1;
    ++m.line_count;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);

    std::size_t first = 0;
    std::size_t indent_cols = 0;
    while (first < line.size() && (line[first] == ' ' || line[first] == '\t')) {
      indent_cols += line[first] == '\t' ? 4 : 1;
      ++first;
    }
    if (first == line.size()) continue;  // blank
    ++nonblank_lines;
    nonblank_chars += line.size();

    const std::string_view content = line.substr(first);
    const bool directive = content[0] == '#' && is_directive(content.substr(1));
    const bool comment_line = in_block || content.starts_with("//") || content.starts_with("/*") ||
                              (content[0] == '#' && !directive);
    if (comment_line) {
      ++m.comment_lines;
    } else {
      m.max_nesting_depth = std::max(m.max_nesting_depth, indent_cols / 4);
    }

    char quote = 0;
    for (std::size_t i = first; i < line.size(); ++i) {
      const char c = line[i];
      if (in_block) {
        if (c == '*' && i + 1 < line.size() && line[i + 1] == '/') {
          in_block = false;
          ++i;
        }
        continue;
      }
      if (quote != 0) {
        if (c == '\\') {
          ++i;
        } else if (c == quote) {
          quote = 0;
        }
        continue;
      }
      if (c == ' ' || c == '\t') continue;
      if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') break;
      if (c == '/' && i + 1 < line.size() && line[i + 1] == '*') {
        in_block = true;
        ++i;
        continue;
      }
      if (c == '#' && !(directive && i == first)) break;
      ++m.token_count;
      if (c == '"' || c == '\'') {
        quote = c;
        continue;
      }
      if (word_char(c)) {
        std::size_t j = i;
        while (j < line.size() && word_char(line[j])) ++j;
        const std::string_view word = line.substr(i, j - i);
        if (!std::isdigit(static_cast<unsigned char>(word[0]))) {
          if (is_branch_keyword(word)) ++m.branch_keyword_count;
          if (!language_keywords().contains(word)) identifiers.emplace(word);
        }
        i = j - 1;
        continue;
      }
      if (c == '(' || c == '[' || c == '{') {
        ++depth;
        m.max_nesting_depth = std::max(m.max_nesting_depth, depth);
      } else if ((c == ')' || c == ']' || c == '}') && depth > 0) {
        --depth;
      }
    }
  }

  m.unique_identifier_count = identifiers.size();
  m.comment_ratio = static_cast<double>(m.comment_lines) / static_cast<double>(std::max<std::size_t>(1, m.line_count));
  m.mean_line_length =
      nonblank_lines == 0 ? 0.0 : static_cast<double>(nonblank_chars) / static_cast<double>(nonblank_lines);
  return m;
}

const textsim::Vectorizer& feature_vectorizer() {
  static const textsim::TfidfVectorizer vectorizer;
  return vectorizer;
}

FeatureVector extract_features(std::string_view code, std::string_view question, std::string_view rubric,
                               Difficulty difficulty, const textsim::Vectorizer& vectorizer) {
  const CodeMetrics m = measure_code(code);
  FeatureVector fv;
  fv[Feature::kLineCount] = static_cast<double>(m.line_count);
  fv[Feature::kTokenCount] = static_cast<double>(m.token_count);
  fv[Feature::kUniqueIdentifierCount] = static_cast<double>(m.unique_identifier_count);
  fv[Feature::kMaxNestingDepth] = static_cast<double>(m.max_nesting_depth);
  fv[Feature::kBranchKeywordCount] = static_cast<double>(m.branch_keyword_count);
  fv[Feature::kCommentRatio] = m.comment_ratio;
  fv[Feature::kMeanLineLength] = m.mean_line_length;

  const auto code_vec = vectorizer.vectorize(code);
  fv[Feature::kQaSimilarity] = textsim::cosine(code_vec, vectorizer.vectorize(question));
  fv[Feature::kRubricSimilarity] = textsim::cosine(code_vec, vectorizer.vectorize(rubric));
  fv[Feature::kDifficultyOrdinal] = static_cast<double>(difficulty_ordinal(difficulty));
  return fv;
}

}  // namespace labgrade::evaluator
