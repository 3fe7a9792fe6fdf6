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

#include "labgrade/genpipe/allocate.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/genpipe/rng.hpp"

namespace labgrade::genpipe {

GenerationRequest request_for_lab(const Lab& lab, int student_count) {
  GenerationRequest req;
  req.topic_keywords = lab.topic_keywords;
  req.difficulty = lab.difficulty;
  req.student_count = student_count;
  req.seed = mix_seed({lab.policy.seed, hash_text(lab.lab_id)});
  req.backend = lab.policy.backend;
  req.max_attempts_per_question = lab.policy.max_attempts_per_question;
  req.dedup_threshold = lab.policy.dedup_threshold;
  return req;
}

AllocationResult allocate_lab(const Lab& lab, std::span<const std::string> roster,
                              const textsim::Vectorizer& vectorizer, const QuestionSource* external,
                              Timestamp now) {
  if (lab.state != LabState::kDraft) {
    throw Error(ErrorCode::kAlreadyAllocated,
                fmt::format("lab {} is {}, allocation needs Draft", lab.lab_id, to_string(lab.state)));
  }
  if (roster.empty()) throw Error(ErrorCode::kValidationFailed, "roster is empty", {"roster"});
  std::unordered_set<std::string_view> seen;
  for (const auto& s : roster) {
    if (s.empty() || !seen.insert(s).second) {
      throw Error(ErrorCode::kValidationFailed, fmt::format("roster entry '{}' is empty or repeated", s), {"roster"});
    }
  }

  const GenerationRequest req = request_for_lab(lab, static_cast<int>(roster.size()));
  std::vector<GeneratedQuestion> questions;
  if (req.backend == GeneratorBackend::kExternal) {
    if (external == nullptr) {
      throw Error(ErrorCode::kBackendUnavailable, "lab selects the External generator but none is configured");
    }
    questions = generate_batch(req, vectorizer, *external);
  } else {
    questions = generate_batch(req, vectorizer);
  }

  AllocationResult result;
  result.lab = lab;
  result.lab.state = LabState::kAllocated;
  result.allocations.reserve(roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) {
    Allocation a;
    a.allocation_id = fmt::format("{}-{}", lab.lab_id, i + 1);
    a.lab_id = lab.lab_id;
    a.student_id = roster[i];
    a.question_text = std::move(questions[i].question_text);
    a.rubric_answer = std::move(questions[i].rubric_answer);
    a.generated_at = now;
    a.generator_backend = req.backend;
    result.allocations.push_back(std::move(a));
  }
  return result;
}

}  // namespace labgrade::genpipe
