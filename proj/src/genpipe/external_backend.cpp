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

#include "labgrade/genpipe/external.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "labgrade/core/errors.hpp"

namespace labgrade::genpipe {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

QuestionAnswerText parse_generator_response(std::string_view body) {
  constexpr std::string_view kQuestion = "QUESTION:";
  constexpr std::string_view kAnswer = "ANSWER:";
  const auto q = body.find(kQuestion);
  const auto a = body.find(kAnswer, q == std::string_view::npos ? 0 : q);
  if (q == std::string_view::npos || a == std::string_view::npos) {
    throw Error(ErrorCode::kBackendUnavailable, "generator response lacks QUESTION:/ANSWER: sections");
  }
  QuestionAnswerText out;
  out.question = std::string(trim(body.substr(q + kQuestion.size(), a - q - kQuestion.size())));
  out.answer = std::string(trim(body.substr(a + kAnswer.size())));
  if (out.question.empty() || out.answer.empty()) {
    throw Error(ErrorCode::kBackendUnavailable, "generator response has an empty section");
  }
  return out;
}

ExternalSource::ExternalSource(ExternalGeneratorConfig config) : config_(std::move(config)) {}

GeneratedQuestion ExternalSource::generate(const GenerationRequest& req, std::uint64_t attempt_index,
                                           std::span<const std::string> kept_digests) const {
  const nlohmann::json payload = {{"keywords", req.topic_keywords},
                                  {"difficulty", to_string(req.difficulty)},
                                  {"attempt_index", attempt_index},
                                  {"seed", req.seed},
                                  {"no_repeat", std::vector<std::string>(kept_digests.begin(), kept_digests.end())}};
  const std::string body = payload.dump();

  httplib::Client client(config_.base_url);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.retry_budget; ++attempt) {
    auto res = client.Post(config_.path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = fmt::format("HTTP {}", res->status);
      continue;
    }
    try {
      auto parsed = parse_generator_response(res->body);
      GeneratedQuestion q;
      q.question_text = std::move(parsed.question);
      q.rubric_answer = std::move(parsed.answer);
      q.difficulty = req.difficulty;
      q.provenance = {GeneratorBackend::kExternal, 1, req.seed, attempt_index, ""};
      return q;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::kBackendUnavailable,
              fmt::format("external generator at {} failed after {} tries: {}", config_.base_url,
                          config_.retry_budget + 1, last_error));
}

}  // namespace labgrade::genpipe
