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
#include <span>
#include <string>
#include <vector>

#include "labgrade/core/dataset.hpp"
#include "labgrade/textsim/vector.hpp"

namespace labgrade::textsim {

inline constexpr double kDefaultDedupThreshold = 0.85;
inline constexpr std::size_t kSimilarityBins = 20;

struct SimilarityReport {
  std::size_t pair_count = 0;
  // 20 equal-width bins over [0, 1]; a score of exactly 1 lands in the last.
  std::array<std::size_t, kSimilarityBins> histogram{};
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

std::size_t similarity_bin(double score);

// Summarises a set of scores. Scores are sorted before summation, so the
// report does not depend on input order.
SimilarityReport summarize_similarities(std::vector<double> scores);

// TF-IDF vectorizer whose document frequencies come from every question and
// answer in the corpus.
TfidfVectorizer corpus_vectorizer(std::span<const DatasetRecord> corpus);

struct QaScore {
  std::string id;
  double similarity = 0.0;
};

// cosine(question, answer) per record, in corpus order.
std::vector<QaScore> qa_similarity_scores(std::span<const DatasetRecord> corpus, const Vectorizer& vectorizer);

// Throws Error(kEmptyCorpus) for an empty corpus. The one-argument overload
// uses corpus_vectorizer(corpus).
SimilarityReport qa_similarity_report(std::span<const DatasetRecord> corpus);
SimilarityReport qa_similarity_report(std::span<const DatasetRecord> corpus, const Vectorizer& vectorizer);

struct QuestionItem {
  std::string id;
  std::string text;
};

struct DroppedQuestion {
  std::string id;
  std::string duplicate_of;
  double similarity = 0.0;

  bool operator==(const DroppedQuestion&) const = default;
};

struct DedupResult {
  std::vector<std::string> kept;
  std::vector<DroppedQuestion> dropped;
};

// Greedy first-wins scan in input order: a question is dropped when its cosine
// to some already-kept question is >= threshold, and names the earliest such
// kept question. Throws Error(kBadThreshold) unless threshold is in (0, 1].
// The single-vectorizer overload builds TF-IDF statistics from the question
// texts themselves.
DedupResult dedup_filter(std::span<const QuestionItem> questions, double threshold);
DedupResult dedup_filter(std::span<const QuestionItem> questions, double threshold, const Vectorizer& vectorizer);

}  // namespace labgrade::textsim
