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

#include <string>
#include <string_view>

#include "labgrade/genpipe/generator.hpp"

namespace labgrade::genpipe {

struct ExternalGeneratorConfig {
  std::string base_url = "http://127.0.0.1:8090";  // scheme://host:port
  std::string path = "/generate";
  int timeout_ms = 5000;
  int retry_budget = 3;  // additional tries after the first failure
};

// Client for an HTTP text-generation service.
//
// Request: POST <path>, JSON body
//   {"keywords": [...], "difficulty": "Easy", "attempt_index": n,
//    "seed": s, "no_repeat": ["<digest>", ...]}
// Response: 200, plain text with two sections
//   QUESTION:
//   <question text>
//   ANSWER:
//   <reference answer>
// Transport errors, non-200 statuses and unparseable bodies are retried; once
// the budget is spent generate() throws Error(kBackendUnavailable).
class ExternalSource final : public QuestionSource {
 public:
  explicit ExternalSource(ExternalGeneratorConfig config);

  GeneratorBackend backend() const override { return GeneratorBackend::kExternal; }
  GeneratedQuestion generate(const GenerationRequest& req, std::uint64_t attempt_index,
                             std::span<const std::string> kept_digests) const override;

  const ExternalGeneratorConfig& config() const { return config_; }

 private:
  ExternalGeneratorConfig config_;
};

struct QuestionAnswerText {
  std::string question;
  std::string answer;
};

// Splits a "QUESTION:/ANSWER:" body. Throws Error(kBackendUnavailable) when a
// section is missing or empty.
QuestionAnswerText parse_generator_response(std::string_view body);

}  // namespace labgrade::genpipe
