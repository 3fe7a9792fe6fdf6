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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "labgrade/analytics/progress.hpp"
#include "labgrade/core/types.hpp"
#include "labgrade/evaluator/grading.hpp"
#include "labgrade/genpipe/generator.hpp"
#include "labgrade/labsvc/event_log.hpp"

namespace labgrade::labsvc {

enum class VivaState { kOpen, kCompleted, kExpired };
std::string_view to_string(VivaState s);

struct VivaAnswer {
  std::string text;
  double score = 0.0;
  std::string feedback;
  Timestamp answered_at{};

  bool operator==(const VivaAnswer&) const = default;
};

struct VivaSession {
  std::string session_id;
  std::string allocation_id;
  std::string submission_id;
  std::string student_id;
  std::vector<genpipe::VivaItem> questions;
  std::vector<std::optional<VivaAnswer>> answers;  // parallel to questions
  VivaState state = VivaState::kOpen;
  Timestamp started_at{};
  int duration_minutes = 0;
  std::optional<double> viva_score;
  std::optional<Timestamp> ended_at;

  Timestamp expires_at() const { return started_at + std::chrono::minutes{duration_minutes}; }
  std::size_t answered() const;
  bool operator==(const VivaSession&) const = default;
};

struct SubmissionRecord {
  Submission submission;
  std::string lab_id;
  std::string student_id;
  evaluator::GradeBreakdown breakdown;
  std::string viva_session_id;
  int revision = 1;
  // Submission time, moved to the viva's end once the viva finishes.
  Timestamp completed_at{};

  bool operator==(const SubmissionRecord&) const = default;
};

struct AuditEntry {
  std::uint64_t seq = 0;
  std::string action;  // "override" or "resubmission"
  std::string actor_id;
  std::string submission_id;
  std::optional<double> before;
  std::optional<double> after;
  std::string reason;
  Timestamp at{};

  bool operator==(const AuditEntry&) const = default;
};

// Everything the service knows, as a pure left fold over the event log.
// Sessions (login tokens) are deliberately not part of it.
struct ServiceState {
  std::uint64_t last_seq = 0;
  std::map<std::string, User> users;
  std::map<std::string, Lab> labs;
  std::map<std::string, Timestamp> lab_activated_at;
  std::map<std::string, Allocation> allocations;
  std::map<std::string, SubmissionRecord> submissions;
  std::map<std::string, std::string> submission_by_allocation;
  std::map<std::string, VivaSession> vivas;
  std::vector<AuditEntry> audit;
  std::uint64_t labs_created = 0;
  std::uint64_t submissions_created = 0;
  std::uint64_t vivas_created = 0;

  bool operator==(const ServiceState&) const = default;
};

namespace event_kind {
inline constexpr std::string_view kUserRegistered = "user_registered";
inline constexpr std::string_view kUserStatusChanged = "user_status_changed";
inline constexpr std::string_view kLabCreated = "lab_created";
inline constexpr std::string_view kLabAllocated = "lab_allocated";
inline constexpr std::string_view kLabDeallocated = "lab_deallocated";
inline constexpr std::string_view kLabActivated = "lab_activated";
inline constexpr std::string_view kLabClosed = "lab_closed";
inline constexpr std::string_view kSubmissionGraded = "submission_graded";
inline constexpr std::string_view kVivaAnswered = "viva_answered";
inline constexpr std::string_view kVivaExpired = "viva_expired";
inline constexpr std::string_view kScoreOverridden = "score_overridden";
}  // namespace event_kind

// Folds one event into the state. Events must arrive in sequence order;
// unknown kinds, gaps and references to missing entities throw Error(kIo).
void apply_event(ServiceState& state, const StoredEvent& event);

// Recomputes final_score from (ai, viva, override) under the lab's viva
// weight. Idempotent.
void recompute_final(ServiceState& state, SubmissionRecord& record);

// Canonical JSON (maps in key order), used for snapshots and for comparing
// states byte for byte.
nlohmann::json state_to_json(const ServiceState& state);
ServiceState state_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const VivaSession& v);
void from_json(const nlohmann::json& j, VivaSession& v);
void to_json(nlohmann::json& j, const SubmissionRecord& r);
void from_json(const nlohmann::json& j, SubmissionRecord& r);

// Progress events for a subject, derived from the state: a student's
// allocations (assigned) and scored submissions (completed); a faculty
// member's activated labs (conducted) and per-lab class means (completed).
std::vector<analytics::ProgressEvent> progress_events(const ServiceState& state, const User& user);

}  // namespace labgrade::labsvc
