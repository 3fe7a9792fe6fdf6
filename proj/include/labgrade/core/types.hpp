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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "labgrade/core/time.hpp"

namespace labgrade {

// Marks are real numbers on [0, 100]; equality and range checks use this slack.
inline constexpr double kMarkTolerance = 1e-9;

bool mark_in_range(double mark);
bool marks_equal(const std::optional<double>& a, const std::optional<double>& b);

enum class Category { kEasy, kMedium, kHard };
using Difficulty = Category;

std::string_view to_string(Category c);
// Case-insensitive match against Easy/Medium/Hard.
std::optional<Category> parse_category(std::string_view text);
// Easy = 1, Medium = 2, Hard = 3.
int difficulty_ordinal(Category c);

enum class LabState { kDraft, kAllocated, kActive, kClosed };
std::string_view to_string(LabState s);
std::optional<LabState> parse_lab_state(std::string_view text);

enum class LabMode { kProctored, kNonProctored };
std::string_view to_string(LabMode m);
std::optional<LabMode> parse_lab_mode(std::string_view text);

enum class GeneratorBackend { kTemplate, kExternal };
std::string_view to_string(GeneratorBackend b);
std::optional<GeneratorBackend> parse_generator_backend(std::string_view text);

enum class Role { kFaculty, kStudent };
std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view text);

struct GradeWeights {
  double correctness = 0.6;
  double readability = 0.2;
  double complexity = 0.2;

  bool operator==(const GradeWeights&) const = default;
};

// Nonnegative and summing to one within 1e-9.
bool weights_valid(const GradeWeights& w);

// Per-lab knobs the faculty may tune.
struct LabPolicy {
  GradeWeights weights;
  double viva_weight = 0.3;
  int viva_question_count = 3;
  double dedup_threshold = 0.85;
  int max_attempts_per_question = 8;
  std::uint64_t seed = 42;
  GeneratorBackend backend = GeneratorBackend::kTemplate;

  bool operator==(const LabPolicy&) const = default;
};

struct Lab {
  std::string lab_id;
  std::string owner_id;
  std::string section;
  std::string title;
  std::vector<std::string> topic_keywords;
  Difficulty difficulty = Difficulty::kEasy;
  int viva_duration_minutes = 10;
  LabMode mode = LabMode::kNonProctored;
  std::string description;
  std::string instructions;
  Timestamp deadline{};
  LabState state = LabState::kDraft;
  LabPolicy policy;

  bool operator==(const Lab&) const = default;
};

// Names of the fields that violate Lab invariants; empty when valid.
std::vector<std::string> validate_lab(const Lab& lab);

struct Allocation {
  std::string allocation_id;
  std::string lab_id;
  std::string student_id;
  std::string question_text;
  std::string rubric_answer;
  Timestamp generated_at{};
  GeneratorBackend generator_backend = GeneratorBackend::kTemplate;

  bool operator==(const Allocation&) const = default;
};

struct Submission {
  std::string submission_id;
  std::string allocation_id;
  std::string code_text;
  std::string language_tag;
  Timestamp submitted_at{};
  std::optional<double> ai_score;
  std::optional<double> faculty_override;
  std::optional<double> viva_score;
  std::optional<double> final_score;
  std::vector<std::string> feedback;

  bool operator==(const Submission&) const = default;
};

struct User {
  std::string user_id;
  Role role = Role::kStudent;
  std::string credential_hash;
  std::string display_name;
  std::string section;
  bool disabled = false;

  bool operator==(const User&) const = default;
};

// Override wins; otherwise the automated grade, blended with the viva score
// when one exists: (1 - viva_weight) * ai + viva_weight * viva.
std::optional<double> compose_final_score(const std::optional<double>& ai_score,
                                          const std::optional<double>& viva_score,
                                          const std::optional<double>& faculty_override,
                                          double viva_weight);

struct TransitionResult {
  bool accepted = false;
  std::string reason;
};

// Only adjacent forward moves along Draft -> Allocated -> Active -> Closed.
TransitionResult validate_transition(LabState current, LabState next);

}  // namespace labgrade
