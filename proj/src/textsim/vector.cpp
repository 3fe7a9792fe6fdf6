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

#include "labgrade/textsim/vector.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "labgrade/simd/kernels.hpp"
#include "labgrade/textsim/tokenize.hpp"

namespace labgrade::textsim {

std::uint64_t term_id(std::string_view token) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

TextVector make_text_vector(std::vector<std::pair<std::uint64_t, double>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  TextVector v;
  for (const auto& [term, weight] : entries) {
    if (!v.terms.empty() && v.terms.back() == term) {
      v.weights.back() += weight;
    } else {
      v.terms.push_back(term);
      v.weights.push_back(weight);
    }
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.terms.size(); ++i) {
    if (v.weights[i] == 0.0) continue;
    v.terms[out] = v.terms[i];
    v.weights[out] = v.weights[i];
    ++out;
  }
  v.terms.resize(out);
  v.weights.resize(out);
  v.norm_squared = simd::sum_squares(v.weights);
  v.norm = std::sqrt(v.norm_squared);
  return v;
}

CorpusStats CorpusStats::from_documents(std::span<const std::string> documents) {
  CorpusStats stats;
  for (const auto& doc : documents) stats.add_document(doc);
  return stats;
}

void CorpusStats::add_document(std::string_view text) {
  std::unordered_set<std::uint64_t> distinct;
  for (const auto& tok : tokenize(text)) distinct.insert(term_id(tok));
  for (auto term : distinct) ++df_[term];
  ++documents_;
}

std::uint32_t CorpusStats::document_frequency(std::uint64_t term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double CorpusStats::idf(std::uint64_t term) const {
  const double n = static_cast<double>(documents_);
  const double df = static_cast<double>(document_frequency(term));
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

TfidfVectorizer::TfidfVectorizer(CorpusStats stats) : stats_(std::move(stats)) {}

TextVector TfidfVectorizer::vectorize(std::string_view text) const {
  std::vector<std::uint64_t> ids;
  for (const auto& tok : tokenize(text)) ids.push_back(term_id(tok));
  std::sort(ids.begin(), ids.end());

  std::vector<std::pair<std::uint64_t, double>> entries;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    const double tf = static_cast<double>(j - i);
    entries.emplace_back(ids[i], (1.0 + std::log(tf)) * stats_.idf(ids[i]));
    i = j;
  }
  return make_text_vector(std::move(entries));
}

double cosine(const TextVector& a, const TextVector& b) {
  if (a.is_zero() || b.is_zero()) return 0.0;
  // Products are gathered in term order and reduced with the same kernel as
  // norm_squared, so identical vectors give dot == norm_squared bit for bit.
  std::vector<double> products;
  products.reserve(std::min(a.terms.size(), b.terms.size()));
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (a.terms[i] < b.terms[j]) {
      ++i;
    } else if (b.terms[j] < a.terms[i]) {
      ++j;
    } else {
      products.push_back(a.weights[i] * b.weights[j]);
      ++i;
      ++j;
    }
  }
  const double dot = simd::sum(products);
  return std::clamp(dot / std::sqrt(a.norm_squared * b.norm_squared), 0.0, 1.0);
}

}  // namespace labgrade::textsim
