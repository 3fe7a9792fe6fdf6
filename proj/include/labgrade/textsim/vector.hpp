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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace labgrade::textsim {

// Sparse vector: term ids strictly ascending, weights parallel to them.
// norm is the cached Euclidean length of weights, norm_squared its square as
// summed (not re-squared), so that cosine(v, v) is exactly 1.
struct TextVector {
  std::vector<std::uint64_t> terms;
  std::vector<double> weights;
  double norm = 0.0;
  double norm_squared = 0.0;

  bool is_zero() const { return norm == 0.0; }
  bool operator==(const TextVector&) const = default;
};

// 64-bit FNV-1a of the token bytes.
std::uint64_t term_id(std::string_view token);

// Builds a TextVector from (term, weight) entries: duplicate terms are summed,
// zero weights dropped, the norm computed.
TextVector make_text_vector(std::vector<std::pair<std::uint64_t, double>> entries);

// Document frequencies over a reference corpus.
class CorpusStats {
 public:
  CorpusStats() = default;

  static CorpusStats from_documents(std::span<const std::string> documents);

  void add_document(std::string_view text);

  std::size_t document_count() const { return documents_; }
  std::uint32_t document_frequency(std::uint64_t term) const;

  // Smoothed: ln((1 + N) / (1 + df)) + 1, so never below 1.
  double idf(std::uint64_t term) const;

 private:
  std::unordered_map<std::uint64_t, std::uint32_t> df_;
  std::size_t documents_ = 0;
};

// Text in, fixed-representation vector out. Implementations must be
// deterministic for a fixed configuration and safe to call concurrently.
class Vectorizer {
 public:
  virtual ~Vectorizer() = default;
  virtual TextVector vectorize(std::string_view text) const = 0;
};

// Weight of term t: (1 + ln tf(t)) * idf(t).
class TfidfVectorizer final : public Vectorizer {
 public:
  explicit TfidfVectorizer(CorpusStats stats = {});

  TextVector vectorize(std::string_view text) const override;
  const CorpusStats& stats() const { return stats_; }

 private:
  CorpusStats stats_;
};

// dot(a, b) / (|a| |b|) clamped to [0, 1]; 0 when either vector is zero.
double cosine(const TextVector& a, const TextVector& b);

}  // namespace labgrade::textsim
