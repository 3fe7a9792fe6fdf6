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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "labgrade/analytics/agreement.hpp"
#include "labgrade/analytics/error_report.hpp"
#include "labgrade/analytics/progress.hpp"
#include "labgrade/evaluator/gbt.hpp"
#include "labgrade/evaluator/grading.hpp"
#include "labgrade/genpipe/generator.hpp"
#include "labgrade/labsvc/credentials.hpp"
#include "labgrade/labsvc/event_log.hpp"
#include "labgrade/labsvc/state.hpp"

namespace labgrade::labsvc {

struct SessionToken {
  std::string token;
  std::string user_id;
  Role role = Role::kStudent;
  Timestamp issued_at{};
  Timestamp expires_at{};
};

// The authenticated caller of an operation.
struct Principal {
  std::string user_id;
  Role role = Role::kStudent;
};

struct ServiceConfig {
  std::optional<std::filesystem::path> data_dir;  // in-memory when unset
  bool sync_writes = true;
  std::chrono::seconds token_ttl{8 * 3600};
  int pbkdf2_iterations = kDefaultPbkdf2Iterations;
  std::uint64_t snapshot_every = 256;  // events between snapshots; 0 disables
  double plagiarism_threshold = 0.9;
  std::size_t worst_cases = 10;
  std::shared_ptr<const evaluator::GbtModel> model;  // null disables grading
  const genpipe::QuestionSource* external = nullptr;
  const Clock* clock = nullptr;  // system clock when null
  evaluator::GradingConfig grading = evaluator::default_grading_config();
};

struct AllocationStatus {
  std::string student_id;
  std::string allocation_id;
  std::string status;
};

struct AllocationSummary {
  std::string lab_id;
  std::size_t count = 0;
  std::vector<AllocationStatus> students;
};

struct MyLab {
  Lab lab;
  std::optional<Allocation> allocation;     // students only
  std::optional<std::string> submission_id;  // students only
  std::size_t allocation_count = 0;          // faculty only
};

struct SubmitResult {
  SubmissionRecord record;
  VivaSession viva;
};

struct VivaAnswerResult {
  double score = 0.0;
  std::string feedback;
  VivaSession session;
  std::optional<double> final_score;
};

struct RankingEntry {
  std::size_t rank = 0;
  std::string submission_id;
  std::string student_id;
  std::string lab_id;
  double final_score = 0.0;
  Timestamp completed_at{};
};

struct PlagiarismAlert {
  std::string submission_a;
  std::string submission_b;
  std::string student_a;
  std::string student_b;
  double similarity = 0.0;
};

struct ClassReport {
  std::string scope;  // "lab" or "section"
  std::string scope_id;
  std::vector<std::string> lab_ids;
  std::vector<std::string> proctored_labs;
  std::size_t submission_count = 0;
  std::size_t override_pairs = 0;
  std::optional<analytics::AgreementReport> agreement;  // needs two override pairs
  std::optional<analytics::ErrorReport> errors;         // needs one override pair
  std::vector<std::pair<double, double>> pairs;         // (ai, override) by submission id
  std::vector<RankingEntry> ranking;
  std::vector<PlagiarismAlert> plagiarism_alerts;
};

nlohmann::ordered_json to_json(const ClassReport& r);

// Lab lifecycle service. Every mutation is validated, written to the event
// log, then folded into the in-memory state, so replaying the log rebuilds
// the state exactly. Writers are serialized; readers share the lock.
class LabService {
 public:
  explicit LabService(ServiceConfig config);

  // Administrative: not exposed over HTTP. Throws kConflict for a taken id.
  User register_user(const std::string& user_id, Role role, std::string_view password,
                     const std::string& display_name = {}, const std::string& section = {});

  // Administrative. A disabled account cannot log in and its open sessions
  // stop authenticating.
  void set_user_disabled(const std::string& user_id, bool disabled);

  // Unknown users and wrong passwords both raise kBadCredentials after the
  // same key-derivation work.
  SessionToken login(const std::string& username, std::string_view password);
  // Throws kUnauthorized for unknown or expired tokens.
  Principal authenticate(const std::string& token) const;
  void logout(const std::string& token);

  Lab create_lab(const Principal& who, Lab draft);
  Lab get_lab(const Principal& who, const std::string& lab_id) const;
  // An empty roster allocates every enabled student of the lab's section.
  AllocationSummary allocate(const Principal& who, const std::string& lab_id, std::vector<std::string> roster);
  Lab deallocate(const Principal& who, const std::string& lab_id);
  Lab activate(const Principal& who, const std::string& lab_id);
  Lab close(const Principal& who, const std::string& lab_id);
  std::vector<MyLab> my_labs(const Principal& who) const;

  SubmitResult submit_code(const Principal& who, const std::string& allocation_id, const std::string& code_text,
                           const std::string& language_tag, bool resubmit = false);
  VivaAnswerResult answer_viva(const Principal& who, const std::string& session_id, std::size_t index,
                               const std::string& answer_text);
  // Closes the session first if its time is up.
  VivaSession get_viva(const Principal& who, const std::string& session_id);
  SubmissionRecord get_submission(const Principal& who, const std::string& submission_id) const;
  SubmissionRecord override_score(const Principal& who, const std::string& submission_id, double value,
                                  const std::string& reason);

  ClassReport lab_report(const Principal& who, const std::string& lab_id) const;
  ClassReport section_report(const Principal& who, const std::string& section) const;
  analytics::ProgressProfile my_progress(const Principal& who) const;
  nlohmann::ordered_json export_submission(const Principal& who, const std::string& submission_id) const;

  bool grading_enabled() const { return config_.model != nullptr; }
  ServiceState state() const;
  std::uint64_t last_seq() const;
  std::vector<AuditEntry> audit_trail(const std::string& submission_id) const;
  void write_snapshot() const;

 private:
  Timestamp now() const;
  StoredEvent commit(std::string_view kind, const std::string& entity_id, nlohmann::json payload);
  Lab& owned_lab(const Principal& who, const std::string& lab_id);
  const Lab& owned_lab(const Principal& who, const std::string& lab_id) const;
  Lab transition(const Principal& who, const std::string& lab_id, LabState next, std::string_view kind);
  bool expire_if_due(VivaSession& session);
  ClassReport build_report(std::string scope, std::string scope_id, const std::vector<std::string>& lab_ids) const;

  ServiceConfig config_;
  SystemClock system_clock_;
  std::unique_ptr<EventLog> log_;
  mutable std::shared_mutex mu_;
  ServiceState state_;
  std::string dummy_hash_;
  mutable std::mutex sessions_mu_;
  std::map<std::string, SessionToken> sessions_;
};

}  // namespace labgrade::labsvc
