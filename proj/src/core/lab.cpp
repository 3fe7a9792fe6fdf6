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
#include <cmath>

#include <fmt/format.h>

#include "labgrade/core/json_io.hpp"
#include "labgrade/core/types.hpp"

namespace labgrade {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

int state_rank(LabState s) { return static_cast<int>(s); }

template <typename Enum, std::size_t N>
std::optional<Enum> match(std::string_view text, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (iequals(text, name)) return value;
  }
  return std::nullopt;
}

constexpr std::pair<std::string_view, Category> kCategories[] = {
    {"Easy", Category::kEasy}, {"Medium", Category::kMedium}, {"Hard", Category::kHard}};
constexpr std::pair<std::string_view, LabState> kStates[] = {{"Draft", LabState::kDraft},
                                                             {"Allocated", LabState::kAllocated},
                                                             {"Active", LabState::kActive},
                                                             {"Closed", LabState::kClosed}};
constexpr std::pair<std::string_view, LabMode> kModes[] = {{"Proctored", LabMode::kProctored},
                                                           {"NonProctored", LabMode::kNonProctored}};
constexpr std::pair<std::string_view, GeneratorBackend> kBackends[] = {{"Template", GeneratorBackend::kTemplate},
                                                                       {"External", GeneratorBackend::kExternal}};
constexpr std::pair<std::string_view, Role> kRoles[] = {{"Faculty", Role::kFaculty}, {"Student", Role::kStudent}};

}  // namespace

bool mark_in_range(double mark) {
  return std::isfinite(mark) && mark >= -kMarkTolerance && mark <= 100.0 + kMarkTolerance;
}

bool marks_equal(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::fabs(*a - *b) <= kMarkTolerance;
}

std::string_view to_string(Category c) { return kCategories[static_cast<int>(c)].first; }
std::optional<Category> parse_category(std::string_view text) { return match(text, kCategories); }
int difficulty_ordinal(Category c) { return static_cast<int>(c) + 1; }

std::string_view to_string(LabState s) { return kStates[static_cast<int>(s)].first; }
std::optional<LabState> parse_lab_state(std::string_view text) { return match(text, kStates); }

std::string_view to_string(LabMode m) { return kModes[static_cast<int>(m)].first; }
std::optional<LabMode> parse_lab_mode(std::string_view text) { return match(text, kModes); }

std::string_view to_string(GeneratorBackend b) { return kBackends[static_cast<int>(b)].first; }
std::optional<GeneratorBackend> parse_generator_backend(std::string_view text) { return match(text, kBackends); }

std::string_view to_string(Role r) { return kRoles[static_cast<int>(r)].first; }
std::optional<Role> parse_role(std::string_view text) { return match(text, kRoles); }

bool weights_valid(const GradeWeights& w) {
  const double parts[] = {w.correctness, w.readability, w.complexity};
  for (double p : parts) {
    if (!std::isfinite(p) || p < 0.0) return false;
  }
  return std::fabs(parts[0] + parts[1] + parts[2] - 1.0) <= 1e-9;
}

std::vector<std::string> validate_lab(const Lab& lab) {
  std::vector<std::string> bad;
  if (lab.title.empty()) bad.emplace_back("title");
  const bool keywords_ok =
      !lab.topic_keywords.empty() &&
      std::none_of(lab.topic_keywords.begin(), lab.topic_keywords.end(), [](const auto& k) { return k.empty(); });
  if (!keywords_ok) bad.emplace_back("topic_keywords");
  if (lab.viva_duration_minutes <= 0) bad.emplace_back("viva_duration");
  const auto& p = lab.policy;
  if (!weights_valid(p.weights)) bad.emplace_back("weights");
  if (!(p.viva_weight >= 0.0 && p.viva_weight <= 1.0)) bad.emplace_back("viva_weight");
  if (p.viva_question_count < 1) bad.emplace_back("viva_question_count");
  if (!(p.dedup_threshold > 0.0 && p.dedup_threshold <= 1.0)) bad.emplace_back("dedup_threshold");
  if (p.max_attempts_per_question < 1) bad.emplace_back("max_attempts_per_question");
  return bad;
}

std::optional<double> compose_final_score(const std::optional<double>& ai_score,
                                          const std::optional<double>& viva_score,
                                          const std::optional<double>& faculty_override,
                                          double viva_weight) {
  if (faculty_override) return faculty_override;
  if (!ai_score) return std::nullopt;
  if (!viva_score) return ai_score;
  const double mixed = (1.0 - viva_weight) * *ai_score + viva_weight * *viva_score;
  return std::clamp(mixed, 0.0, 100.0);
}

TransitionResult validate_transition(LabState current, LabState next) {
  if (state_rank(next) == state_rank(current) + 1) return {true, ""};
  if (state_rank(next) <= state_rank(current)) {
    return {false, fmt::format("{} -> {} moves backwards", to_string(current), to_string(next))};
  }
  return {false, fmt::format("{} -> {} skips a state", to_string(current), to_string(next))};
}

// JSON mapping.

namespace {

template <typename E>
E enum_from(const nlohmann::json& j, std::optional<E> (*parse)(std::string_view), const char* what) {
  auto v = parse(j.get<std::string>());
  if (!v) throw Error(ErrorCode::kValidationFailed, fmt::format("bad {}: {}", what, j.dump()), {what});
  return *v;
}

void put_optional(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> get_optional(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const GradeWeights& w) {
  j = {{"correctness", w.correctness}, {"readability", w.readability}, {"complexity", w.complexity}};
}

void from_json(const nlohmann::json& j, GradeWeights& w) {
  w.correctness = j.value("correctness", w.correctness);
  w.readability = j.value("readability", w.readability);
  w.complexity = j.value("complexity", w.complexity);
}

void to_json(nlohmann::json& j, const LabPolicy& p) {
  j = {{"weights", p.weights},
       {"viva_weight", p.viva_weight},
       {"viva_question_count", p.viva_question_count},
       {"dedup_threshold", p.dedup_threshold},
       {"max_attempts_per_question", p.max_attempts_per_question},
       {"seed", p.seed},
       {"backend", to_string(p.backend)}};
}

void from_json(const nlohmann::json& j, LabPolicy& p) {
  if (j.contains("weights")) p.weights = j.at("weights").get<GradeWeights>();
  p.viva_weight = j.value("viva_weight", p.viva_weight);
  p.viva_question_count = j.value("viva_question_count", p.viva_question_count);
  p.dedup_threshold = j.value("dedup_threshold", p.dedup_threshold);
  p.max_attempts_per_question = j.value("max_attempts_per_question", p.max_attempts_per_question);
  p.seed = j.value("seed", p.seed);
  if (j.contains("backend")) p.backend = enum_from(j.at("backend"), parse_generator_backend, "backend");
}

void to_json(nlohmann::json& j, const Lab& lab) {
  j = {{"lab_id", lab.lab_id},
       {"owner_id", lab.owner_id},
       {"section", lab.section},
       {"title", lab.title},
       {"topic_keywords", lab.topic_keywords},
       {"difficulty", to_string(lab.difficulty)},
       {"viva_duration", lab.viva_duration_minutes},
       {"mode", to_string(lab.mode)},
       {"description", lab.description},
       {"instructions", lab.instructions},
       {"deadline", to_epoch_seconds(lab.deadline)},
       {"state", to_string(lab.state)},
       {"policy", lab.policy}};
}

void from_json(const nlohmann::json& j, Lab& lab) {
  lab.lab_id = j.value("lab_id", "");
  lab.owner_id = j.value("owner_id", "");
  lab.section = j.value("section", "");
  lab.title = j.at("title").get<std::string>();
  lab.topic_keywords = j.at("topic_keywords").get<std::vector<std::string>>();
  lab.difficulty = enum_from(j.at("difficulty"), parse_category, "difficulty");
  lab.viva_duration_minutes = j.at("viva_duration").get<int>();
  lab.mode = enum_from(j.at("mode"), parse_lab_mode, "mode");
  lab.description = j.value("description", "");
  lab.instructions = j.value("instructions", "");
  lab.deadline = from_epoch_seconds(j.at("deadline").get<std::int64_t>());
  lab.state = j.contains("state") ? enum_from(j.at("state"), parse_lab_state, "state") : LabState::kDraft;
  if (j.contains("policy")) lab.policy = j.at("policy").get<LabPolicy>();
}

void to_json(nlohmann::json& j, const Allocation& a) {
  j = {{"allocation_id", a.allocation_id},
       {"lab_id", a.lab_id},
       {"student_id", a.student_id},
       {"question_text", a.question_text},
       {"rubric_answer", a.rubric_answer},
       {"generated_at", to_epoch_seconds(a.generated_at)},
       {"generator_backend", to_string(a.generator_backend)}};
}

void from_json(const nlohmann::json& j, Allocation& a) {
  a.allocation_id = j.at("allocation_id").get<std::string>();
  a.lab_id = j.at("lab_id").get<std::string>();
  a.student_id = j.at("student_id").get<std::string>();
  a.question_text = j.at("question_text").get<std::string>();
  a.rubric_answer = j.at("rubric_answer").get<std::string>();
  a.generated_at = from_epoch_seconds(j.at("generated_at").get<std::int64_t>());
  a.generator_backend = enum_from(j.at("generator_backend"), parse_generator_backend, "generator_backend");
}

void to_json(nlohmann::json& j, const Submission& s) {
  j = {{"submission_id", s.submission_id},
       {"allocation_id", s.allocation_id},
       {"code_text", s.code_text},
       {"language_tag", s.language_tag},
       {"submitted_at", to_epoch_seconds(s.submitted_at)},
       {"feedback", s.feedback}};
  put_optional(j, "ai_score", s.ai_score);
  put_optional(j, "faculty_override", s.faculty_override);
  put_optional(j, "viva_score", s.viva_score);
  put_optional(j, "final_score", s.final_score);
}

void from_json(const nlohmann::json& j, Submission& s) {
  s.submission_id = j.at("submission_id").get<std::string>();
  s.allocation_id = j.at("allocation_id").get<std::string>();
  s.code_text = j.at("code_text").get<std::string>();
  s.language_tag = j.value("language_tag", "");
  s.submitted_at = from_epoch_seconds(j.at("submitted_at").get<std::int64_t>());
  s.feedback = j.value("feedback", std::vector<std::string>{});
  s.ai_score = get_optional(j, "ai_score");
  s.faculty_override = get_optional(j, "faculty_override");
  s.viva_score = get_optional(j, "viva_score");
  s.final_score = get_optional(j, "final_score");
}

void to_json(nlohmann::json& j, const User& u) {
  j = {{"user_id", u.user_id},
       {"role", to_string(u.role)},
       {"credential_hash", u.credential_hash},
       {"display_name", u.display_name},
       {"section", u.section},
       {"disabled", u.disabled}};
}

void from_json(const nlohmann::json& j, User& u) {
  u.user_id = j.at("user_id").get<std::string>();
  u.role = enum_from(j.at("role"), parse_role, "role");
  u.credential_hash = j.at("credential_hash").get<std::string>();
  u.display_name = j.value("display_name", "");
  u.section = j.value("section", "");
  u.disabled = j.value("disabled", false);
}

}  // namespace labgrade
