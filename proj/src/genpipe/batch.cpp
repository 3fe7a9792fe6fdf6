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

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/genpipe/generator.hpp"
#include "labgrade/genpipe/rng.hpp"
#include "labgrade/genpipe/template_bank.hpp"

namespace labgrade::genpipe {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool mentions_keyword(const std::string& text, std::span<const std::string> keywords) {
  const std::string haystack = lower(text);
  return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& k) {
    const auto b = k.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return false;
    const auto e = k.find_last_not_of(" \t\r\n");
    return haystack.find(lower(std::string_view(k).substr(b, e - b + 1))) != std::string::npos;
  });
}

}  // namespace

void validate_request(const GenerationRequest& req) {
  std::vector<std::string> bad;
  const bool keywords_ok =
      !req.topic_keywords.empty() &&
      std::none_of(req.topic_keywords.begin(), req.topic_keywords.end(),
                   [](const std::string& k) { return k.find_first_not_of(" \t\r\n") == std::string::npos; });
  if (!keywords_ok) bad.emplace_back("topic_keywords");
  if (req.student_count < 1) bad.emplace_back("student_count");
  if (req.max_attempts_per_question < 1) bad.emplace_back("max_attempts_per_question");
  if (!(req.dedup_threshold > 0.0 && req.dedup_threshold <= 1.0)) bad.emplace_back("dedup_threshold");
  if (!bad.empty()) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("invalid generation request: {}", fmt::join(bad, ", ")),
                bad);
  }
}

std::string question_digest(std::string_view text) { return fmt::format("{:016x}", hash_text(text)); }

const textsim::Vectorizer& default_question_vectorizer() {
  static const textsim::TfidfVectorizer vectorizer = [] {
    const auto docs = bank_documents();
    return textsim::TfidfVectorizer(textsim::CorpusStats::from_documents(docs));
  }();
  return vectorizer;
}

std::vector<GeneratedQuestion> generate_batch(const GenerationRequest& req, const textsim::Vectorizer& vectorizer,
                                              const QuestionSource& source) {
  validate_request(req);

  std::vector<GeneratedQuestion> kept;
  std::vector<textsim::TextVector> kept_vectors;
  std::vector<std::string> digests;
  std::uint64_t attempt_index = 0;

  for (int slot = 0; slot < req.student_count; ++slot) {
    bool accepted = false;
    for (int attempt = 1; attempt <= req.max_attempts_per_question && !accepted; ++attempt) {
      GeneratedQuestion cand = source.generate(req, attempt_index++, digests);
      if (cand.question_text.empty() || cand.rubric_answer.empty()) continue;
      if (!mentions_keyword(cand.question_text, req.topic_keywords)) continue;

      textsim::TextVector v = vectorizer.vectorize(cand.question_text);
      const bool unique = std::all_of(kept_vectors.begin(), kept_vectors.end(), [&](const textsim::TextVector& k) {
        return textsim::cosine(v, k) < req.dedup_threshold;
      });
      if (!unique) continue;

      cand.difficulty = req.difficulty;
      cand.provenance.attempts = attempt;
      digests.push_back(question_digest(cand.question_text));
      kept_vectors.push_back(std::move(v));
      kept.push_back(std::move(cand));
      accepted = true;
    }
    if (!accepted) {
      throw Error(ErrorCode::kDiversityExhausted,
                  fmt::format("only {} of {} unique questions after {} attempts for slot {}", kept.size(),
                              req.student_count, req.max_attempts_per_question, slot + 1),
                  {fmt::format("achieved={}", kept.size())});
    }
  }
  return kept;
}

std::vector<GeneratedQuestion> generate_batch(const GenerationRequest& req, const textsim::Vectorizer& vectorizer) {
  return generate_batch(req, vectorizer, TemplateSource{});
}

}  // namespace labgrade::genpipe
