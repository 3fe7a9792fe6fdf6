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
#include <vector>

#include "labgrade/core/types.hpp"
#include "labgrade/textsim/vector.hpp"

namespace labgrade::genpipe {

inline constexpr int kDefaultMaxAttempts = 8;

struct GenerationRequest {
  std::vector<std::string> topic_keywords;
  Difficulty difficulty = Difficulty::kEasy;
  int student_count = 1;
  std::uint64_t seed = 42;
  GeneratorBackend backend = GeneratorBackend::kTemplate;
  int max_attempts_per_question = kDefaultMaxAttempts;
  double dedup_threshold = 0.85;
};

// Throws Error(kValidationFailed) naming the offending fields.
void validate_request(const GenerationRequest& req);

struct Provenance {
  GeneratorBackend backend = GeneratorBackend::kTemplate;
  int attempts = 1;                 // candidates tried for this slot
  std::uint64_t seed = 0;
  std::uint64_t attempt_index = 0;  // index of the accepted candidate
  std::string keyword;              // keyword the question was built around

  bool operator==(const Provenance&) const = default;
};

struct GeneratedQuestion {
  std::string question_text;
  std::string rubric_answer;
  Difficulty difficulty = Difficulty::kEasy;
  Provenance provenance;

  bool operator==(const GeneratedQuestion&) const = default;
};

// Short stable fingerprint of a question text (16 lowercase hex digits).
std::string question_digest(std::string_view text);

// Produces one candidate per call. attempt_index is unique within a batch and
// kept_digests fingerprints the questions accepted so far.
class QuestionSource {
 public:
  virtual ~QuestionSource() = default;
  virtual GeneratorBackend backend() const = 0;
  virtual GeneratedQuestion generate(const GenerationRequest& req, std::uint64_t attempt_index,
                                     std::span<const std::string> kept_digests) const = 0;
};

// Composes a question from the template bank. Pure function of its arguments:
// the keyword, template, dataset, metric, hyperparameter, two variation clauses
// and a deliverable are all drawn from a SplitMix64 stream seeded by
// (seed, attempt_index, difficulty, keywords). Unknown keywords use the
// generic fallback topic with the keyword substituted in.
GeneratedQuestion template_generate(std::span<const std::string> keywords, Difficulty difficulty,
                                    std::uint64_t seed, std::uint64_t attempt_index);

class TemplateSource final : public QuestionSource {
 public:
  GeneratorBackend backend() const override { return GeneratorBackend::kTemplate; }
  GeneratedQuestion generate(const GenerationRequest& req, std::uint64_t attempt_index,
                             std::span<const std::string> kept_digests) const override;
};

// TF-IDF vectorizer with document frequencies from the template bank; the
// default similarity space for question uniqueness.
const textsim::Vectorizer& default_question_vectorizer();

// Exactly req.student_count questions, pairwise cosine below
// req.dedup_threshold, each containing one of the requested keywords
// (case-insensitive). Candidates are screened in order against the kept set;
// a slot that burns max_attempts_per_question candidates throws
// Error(kDiversityExhausted) with details {"achieved=<n>"}.
std::vector<GeneratedQuestion> generate_batch(const GenerationRequest& req, const textsim::Vectorizer& vectorizer,
                                              const QuestionSource& source);

// Template backend.
std::vector<GeneratedQuestion> generate_batch(const GenerationRequest& req, const textsim::Vectorizer& vectorizer);

struct VivaItem {
  std::string question;
  std::string rubric_answer;

  bool operator==(const VivaItem&) const = default;
};

// `count` distinct viva questions for the topics behind `keywords`, topped up
// from the generic pool when the topic pools run short.
std::vector<VivaItem> make_viva_questions(std::span<const std::string> keywords, Difficulty difficulty, int count,
                                          std::uint64_t seed);

}  // namespace labgrade::genpipe
