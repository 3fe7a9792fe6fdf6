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

#include "labgrade/textsim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/simd/kernels.hpp"

namespace labgrade::textsim {

std::size_t similarity_bin(double score) {
  const double clamped = std::clamp(score, 0.0, 1.0);
  return std::min(kSimilarityBins - 1, static_cast<std::size_t>(clamped * kSimilarityBins));
}

SimilarityReport summarize_similarities(std::vector<double> scores) {
  SimilarityReport report;
  report.pair_count = scores.size();
  if (scores.empty()) return report;
  std::sort(scores.begin(), scores.end());
  for (double s : scores) ++report.histogram[similarity_bin(s)];

  const double n = static_cast<double>(scores.size());
  report.mean = simd::sum(scores) / n;
  std::vector<double> centered(scores.size());
  simd::shift(scores, report.mean, centered);
  report.stddev = std::sqrt(simd::sum_squares(centered) / n);
  return report;
}

TfidfVectorizer corpus_vectorizer(std::span<const DatasetRecord> corpus) {
  CorpusStats stats;
  for (const auto& rec : corpus) {
    stats.add_document(rec.question);
    stats.add_document(rec.answer);
  }
  return TfidfVectorizer(std::move(stats));
}

std::vector<QaScore> qa_similarity_scores(std::span<const DatasetRecord> corpus, const Vectorizer& vectorizer) {
  std::vector<QaScore> out;
  out.reserve(corpus.size());
  for (const auto& rec : corpus) {
    out.push_back({rec.id, cosine(vectorizer.vectorize(rec.question), vectorizer.vectorize(rec.answer))});
  }
  return out;
}

SimilarityReport qa_similarity_report(std::span<const DatasetRecord> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "QA similarity needs at least one record");
  return qa_similarity_report(corpus, corpus_vectorizer(corpus));
}

SimilarityReport qa_similarity_report(std::span<const DatasetRecord> corpus, const Vectorizer& vectorizer) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "QA similarity needs at least one record");
  std::vector<double> scores;
  scores.reserve(corpus.size());
  for (const auto& s : qa_similarity_scores(corpus, vectorizer)) scores.push_back(s.similarity);
  return summarize_similarities(std::move(scores));
}

DedupResult dedup_filter(std::span<const QuestionItem> questions, double threshold) {
  CorpusStats stats;
  for (const auto& q : questions) stats.add_document(q.text);
  return dedup_filter(questions, threshold, TfidfVectorizer(std::move(stats)));
}

DedupResult dedup_filter(std::span<const QuestionItem> questions, double threshold, const Vectorizer& vectorizer) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kBadThreshold, fmt::format("threshold {} outside (0, 1]", threshold));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& q : questions) {
    if (!ids.insert(q.id).second) {
      throw Error(ErrorCode::kValidationFailed, fmt::format("duplicate question id '{}'", q.id), {q.id});
    }
  }

  DedupResult result;
  std::vector<TextVector> kept_vectors;
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    TextVector v = vectorizer.vectorize(questions[i].text);
    bool dropped = false;
    for (std::size_t k = 0; k < kept_vectors.size(); ++k) {
      const double sim = cosine(v, kept_vectors[k]);
      if (sim >= threshold) {
        result.dropped.push_back({questions[i].id, questions[kept_index[k]].id, sim});
        dropped = true;
        break;
      }
    }
    if (!dropped) {
      result.kept.push_back(questions[i].id);
      kept_vectors.push_back(std::move(v));
      kept_index.push_back(i);
    }
  }
  return result;
}

}  // namespace labgrade::textsim
