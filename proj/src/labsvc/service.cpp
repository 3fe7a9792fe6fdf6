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

#include "labgrade/labsvc/service.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "labgrade/analytics/export.hpp"
#include "labgrade/core/errors.hpp"
#include "labgrade/core/json_io.hpp"
#include "labgrade/evaluator/features.hpp"
#include "labgrade/evaluator/viva.hpp"
#include "labgrade/genpipe/allocate.hpp"
#include "labgrade/genpipe/rng.hpp"
#include "labgrade/textsim/vector.hpp"

namespace labgrade::labsvc {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void require_role(const Principal& who, Role role) {
  if (who.role != role) {
    throw Error(ErrorCode::kForbidden, fmt::format("{} role required", to_string(role)), {std::string(to_string(role))});
  }
}

[[noreturn]] void not_found(std::string_view what, const std::string& id) {
  throw Error(ErrorCode::kNotFound, fmt::format("{} {} not found", what, id), {id});
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

ordered_json to_json(const ClassReport& r) {
  ordered_json j;
  j["kind"] = "class_report";
  j["schema_version"] = analytics::kReportSchemaVersion;
  j["scope"] = r.scope;
  j["scope_id"] = r.scope_id;
  j["lab_ids"] = r.lab_ids;
  j["proctored_labs"] = r.proctored_labs;
  j["submission_count"] = r.submission_count;
  if (r.agreement) {
    j["agreement"] = analytics::to_json(*r.agreement);
  } else {
    j["agreement"] = {{"status", "insufficient pairs"}, {"n_pairs", r.override_pairs}};
  }
  if (r.errors) {
    j["errors"] = analytics::to_json(*r.errors);
  } else {
    j["errors"] = {{"status", "insufficient pairs"}, {"n_pairs", r.override_pairs}};
  }
  auto pairs = ordered_json::array();
  for (const auto& [ai, fa] : r.pairs) pairs.push_back({ai, fa});
  j["pairs"] = std::move(pairs);
  auto ranking = ordered_json::array();
  for (const auto& e : r.ranking) {
    ranking.push_back({{"rank", e.rank},
                       {"submission_id", e.submission_id},
                       {"student_id", e.student_id},
                       {"lab_id", e.lab_id},
                       {"final_score", e.final_score},
                       {"completed_at", to_epoch_seconds(e.completed_at)}});
  }
  j["ranking"] = std::move(ranking);
  auto alerts = ordered_json::array();
  for (const auto& a : r.plagiarism_alerts) {
    alerts.push_back({{"submission_a", a.submission_a},
                      {"submission_b", a.submission_b},
                      {"student_a", a.student_a},
                      {"student_b", a.student_b},
                      {"similarity", a.similarity}});
  }
  j["plagiarism_alerts"] = std::move(alerts);
  return j;
}

LabService::LabService(ServiceConfig config) : config_(std::move(config)) {
  if (!(config_.plagiarism_threshold > 0.0 && config_.plagiarism_threshold <= 1.0)) {
    throw Error(ErrorCode::kValidationFailed, "plagiarism threshold must be in (0, 1]", {"plagiarism_threshold"});
  }
  if (config_.token_ttl.count() <= 0) throw Error(ErrorCode::kValidationFailed, "token ttl must be positive", {"token_ttl"});

  log_ = config_.data_dir ? std::make_unique<EventLog>(*config_.data_dir, config_.sync_writes) : std::make_unique<EventLog>();
  if (auto snap = log_->read_snapshot()) {
    if (snap->seq > log_->last_seq()) {
      throw Error(ErrorCode::kIo, fmt::format("snapshot at event {} is ahead of the log ({})", snap->seq, log_->last_seq()));
    }
    state_ = state_from_json(snap->state);
    if (state_.last_seq != snap->seq) throw Error(ErrorCode::kIo, "snapshot sequence disagrees with its state");
  }
  for (const auto& e : log_->recovered()) {
    if (e.seq > state_.last_seq) apply_event(state_, e);
  }
  dummy_hash_ = hash_password("", config_.pbkdf2_iterations);
}

Timestamp LabService::now() const {
  const Clock& clock = config_.clock != nullptr ? *config_.clock : static_cast<const Clock&>(system_clock_);
  return clock.now();
}

StoredEvent LabService::commit(std::string_view kind, const std::string& entity_id, json payload) {
  auto e = log_->append(std::string(kind), entity_id, std::move(payload), now());
  apply_event(state_, e);
  if (config_.snapshot_every != 0 && e.seq % config_.snapshot_every == 0) {
    log_->write_snapshot({state_.last_seq, state_to_json(state_)});
  }
  return e;
}

void LabService::write_snapshot() const {
  std::shared_lock lock(mu_);
  log_->write_snapshot({state_.last_seq, state_to_json(state_)});
}

ServiceState LabService::state() const {
  std::shared_lock lock(mu_);
  return state_;
}

std::uint64_t LabService::last_seq() const {
  std::shared_lock lock(mu_);
  return state_.last_seq;
}

std::vector<AuditEntry> LabService::audit_trail(const std::string& submission_id) const {
  std::shared_lock lock(mu_);
  std::vector<AuditEntry> out;
  for (const auto& a : state_.audit) {
    if (a.submission_id == submission_id) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------- identity

User LabService::register_user(const std::string& user_id, Role role, std::string_view password,
                               const std::string& display_name, const std::string& section) {
  std::vector<std::string> bad;
  if (user_id.empty()) bad.emplace_back("user_id");
  if (password.empty()) bad.emplace_back("password");
  if (!bad.empty()) throw Error(ErrorCode::kValidationFailed, "invalid user", bad);
  User user{user_id, role, hash_password(password, config_.pbkdf2_iterations), display_name, section, false};

  std::unique_lock lock(mu_);
  if (state_.users.contains(user_id)) throw Error(ErrorCode::kConflict, fmt::format("user {} exists", user_id), {user_id});
  commit(event_kind::kUserRegistered, user_id, {{"user", user}});
  return user;
}

void LabService::set_user_disabled(const std::string& user_id, bool disabled) {
  std::unique_lock lock(mu_);
  if (!state_.users.contains(user_id)) not_found("user", user_id);
  commit(event_kind::kUserStatusChanged, user_id, {{"user_id", user_id}, {"disabled", disabled}});
}

SessionToken LabService::login(const std::string& username, std::string_view password) {
  std::optional<User> user;
  {
    std::shared_lock lock(mu_);
    if (auto it = state_.users.find(username); it != state_.users.end()) user = it->second;
  }
  // Unknown users are checked against a dummy hash so both failures cost the
  // same derivation.
  const bool match = verify_password(password, user ? user->credential_hash : dummy_hash_);
  if (!user || !match) throw Error(ErrorCode::kBadCredentials, "invalid username or password");
  if (user->disabled) throw Error(ErrorCode::kAccountDisabled, "account disabled");

  const Timestamp t = now();
  SessionToken token{random_token(), user->user_id, user->role, t, t + config_.token_ttl};
  std::lock_guard lock(sessions_mu_);
  sessions_[token.token] = token;
  return token;
}

Principal LabService::authenticate(const std::string& token) const {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnauthorized, "unknown session token");
  if (now() >= it->second.expires_at) throw Error(ErrorCode::kUnauthorized, "session token expired");
  Principal who{it->second.user_id, it->second.role};
  std::shared_lock state_lock(mu_);
  auto user = state_.users.find(who.user_id);
  if (user == state_.users.end() || user->second.disabled) throw Error(ErrorCode::kUnauthorized, "account disabled");
  return who;
}

void LabService::logout(const std::string& token) {
  std::lock_guard lock(sessions_mu_);
  sessions_.erase(token);
}

// ---------------------------------------------------------------- labs

const Lab& LabService::owned_lab(const Principal& who, const std::string& lab_id) const {
  require_role(who, Role::kFaculty);
  auto it = state_.labs.find(lab_id);
  if (it == state_.labs.end()) not_found("lab", lab_id);
  if (it->second.owner_id != who.user_id) {
    throw Error(ErrorCode::kForbidden, fmt::format("lab {} belongs to another faculty member", lab_id), {lab_id});
  }
  return it->second;
}

Lab& LabService::owned_lab(const Principal& who, const std::string& lab_id) {
  return const_cast<Lab&>(std::as_const(*this).owned_lab(who, lab_id));
}

Lab LabService::create_lab(const Principal& who, Lab draft) {
  require_role(who, Role::kFaculty);
  auto bad = validate_lab(draft);
  if (!bad.empty()) throw Error(ErrorCode::kValidationFailed, fmt::format("invalid lab: {}", fmt::join(bad, ", ")), bad);

  std::unique_lock lock(mu_);
  draft.lab_id = fmt::format("lab-{}", state_.labs_created + 1);
  draft.owner_id = who.user_id;
  draft.state = LabState::kDraft;
  if (draft.section.empty()) {
    if (auto it = state_.users.find(who.user_id); it != state_.users.end()) draft.section = it->second.section;
  }
  commit(event_kind::kLabCreated, draft.lab_id, {{"lab", draft}});
  return state_.labs.at(draft.lab_id);
}

Lab LabService::get_lab(const Principal& who, const std::string& lab_id) const {
  std::shared_lock lock(mu_);
  auto it = state_.labs.find(lab_id);
  if (it == state_.labs.end()) not_found("lab", lab_id);
  if (who.role == Role::kStudent) {
    // Students only see labs they hold an allocation in.
    const bool mine = std::any_of(state_.allocations.begin(), state_.allocations.end(), [&](const auto& kv) {
      return kv.second.lab_id == lab_id && kv.second.student_id == who.user_id;
    });
    if (!mine) not_found("lab", lab_id);
  }
  return it->second;
}

AllocationSummary LabService::allocate(const Principal& who, const std::string& lab_id, std::vector<std::string> roster) {
  std::unique_lock lock(mu_);
  const Lab& lab = owned_lab(who, lab_id);
  if (lab.state != LabState::kDraft) {
    throw Error(ErrorCode::kConflict, fmt::format("lab {} is {}, not Draft", lab_id, to_string(lab.state)), {lab_id});
  }
  if (roster.empty()) {
    for (const auto& [id, u] : state_.users) {
      if (u.role == Role::kStudent && !u.disabled && u.section == lab.section) roster.push_back(id);
    }
  }
  if (roster.empty()) throw Error(ErrorCode::kValidationFailed, "roster is empty", {"roster"});
  std::vector<std::string> unknown;
  for (const auto& id : roster) {
    auto it = state_.users.find(id);
    if (it == state_.users.end() || it->second.role != Role::kStudent || it->second.disabled) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("roster names unknown students: {}", fmt::join(unknown, ", ")),
                unknown);
  }

  auto result = genpipe::allocate_lab(lab, roster, genpipe::default_question_vectorizer(), config_.external, now());
  commit(event_kind::kLabAllocated, lab_id, {{"lab_id", lab_id}, {"allocations", result.allocations}});

  AllocationSummary summary{lab_id, result.allocations.size(), {}};
  for (const auto& a : result.allocations) summary.students.push_back({a.student_id, a.allocation_id, "allocated"});
  return summary;
}

Lab LabService::deallocate(const Principal& who, const std::string& lab_id) {
  std::unique_lock lock(mu_);
  const Lab& lab = owned_lab(who, lab_id);
  if (lab.state != LabState::kAllocated) {
    throw Error(ErrorCode::kConflict, fmt::format("lab {} is {}; only Allocated labs can be deallocated", lab_id,
                                                  to_string(lab.state)),
                {lab_id});
  }
  commit(event_kind::kLabDeallocated, lab_id, {{"lab_id", lab_id}});
  return state_.labs.at(lab_id);
}

Lab LabService::transition(const Principal& who, const std::string& lab_id, LabState next, std::string_view kind) {
  std::unique_lock lock(mu_);
  const Lab& lab = owned_lab(who, lab_id);
  const auto check = validate_transition(lab.state, next);
  if (!check.accepted) throw Error(ErrorCode::kConflict, check.reason, {lab_id});
  commit(kind, lab_id, {{"lab_id", lab_id}});
  return state_.labs.at(lab_id);
}

Lab LabService::activate(const Principal& who, const std::string& lab_id) {
  return transition(who, lab_id, LabState::kActive, event_kind::kLabActivated);
}

Lab LabService::close(const Principal& who, const std::string& lab_id) {
  return transition(who, lab_id, LabState::kClosed, event_kind::kLabClosed);
}

std::vector<MyLab> LabService::my_labs(const Principal& who) const {
  std::shared_lock lock(mu_);
  std::vector<MyLab> out;
  if (who.role == Role::kStudent) {
    for (const auto& [id, a] : state_.allocations) {
      if (a.student_id != who.user_id) continue;
      MyLab m{state_.labs.at(a.lab_id), a, std::nullopt, 0};
      if (auto it = state_.submission_by_allocation.find(id); it != state_.submission_by_allocation.end()) {
        m.submission_id = it->second;
      }
      out.push_back(std::move(m));
    }
  } else {
    for (const auto& [id, lab] : state_.labs) {
      if (lab.owner_id != who.user_id) continue;
      const auto n = std::count_if(state_.allocations.begin(), state_.allocations.end(),
                                   [&](const auto& kv) { return kv.second.lab_id == id; });
      out.push_back({lab, std::nullopt, std::nullopt, static_cast<std::size_t>(n)});
    }
  }
  return out;
}

// ---------------------------------------------------------------- submissions

SubmitResult LabService::submit_code(const Principal& who, const std::string& allocation_id,
                                     const std::string& code_text, const std::string& language_tag, bool resubmit) {
  require_role(who, Role::kStudent);
  if (code_text.empty()) throw Error(ErrorCode::kValidationFailed, "code_text is empty", {"code_text"});

  std::unique_lock lock(mu_);
  auto ait = state_.allocations.find(allocation_id);
  if (ait == state_.allocations.end()) not_found("allocation", allocation_id);
  const Allocation& alloc = ait->second;
  if (alloc.student_id != who.user_id) {
    throw Error(ErrorCode::kNotYourAllocation, fmt::format("allocation {} belongs to another student", allocation_id),
                {allocation_id});
  }
  const Lab& lab = state_.labs.at(alloc.lab_id);
  if (lab.state != LabState::kActive) {
    throw Error(ErrorCode::kLabNotActive, fmt::format("lab {} is {}", lab.lab_id, to_string(lab.state)), {lab.lab_id});
  }
  const Timestamp t = now();
  if (t > lab.deadline) throw Error(ErrorCode::kDeadlinePassed, fmt::format("deadline of lab {} has passed", lab.lab_id), {lab.lab_id});

  const SubmissionRecord* previous = nullptr;
  if (auto it = state_.submission_by_allocation.find(allocation_id); it != state_.submission_by_allocation.end()) {
    if (!resubmit) {
      throw Error(ErrorCode::kConflict, fmt::format("allocation {} already has submission {}", allocation_id, it->second),
                  {it->second});
    }
    previous = &state_.submissions.at(it->second);
  }
  if (!config_.model) throw Error(ErrorCode::kGradingUnavailable, "no grading model is loaded");

  Submission sub;
  sub.submission_id = previous ? previous->submission.submission_id : fmt::format("sub-{}", state_.submissions_created + 1);
  sub.allocation_id = allocation_id;
  sub.code_text = code_text;
  sub.language_tag = language_tag;
  sub.submitted_at = t;
  const auto breakdown = evaluator::grade_submission(sub, alloc, lab.difficulty, *config_.model, lab.policy.weights,
                                                     evaluator::feature_vectorizer(), config_.grading);
  sub.ai_score = breakdown.final_score;
  sub.feedback = breakdown.feedback;

  const int revision = previous ? previous->revision + 1 : 1;
  VivaSession viva;
  viva.session_id = fmt::format("viva-{}", state_.vivas_created + 1);
  viva.allocation_id = allocation_id;
  viva.submission_id = sub.submission_id;
  viva.student_id = who.user_id;
  viva.questions = genpipe::make_viva_questions(
      lab.topic_keywords, lab.difficulty, lab.policy.viva_question_count,
      genpipe::mix_seed({lab.policy.seed, genpipe::hash_text(allocation_id), static_cast<std::uint64_t>(revision)}));
  viva.answers.resize(viva.questions.size());
  viva.started_at = t;
  viva.duration_minutes = lab.viva_duration_minutes;

  const std::string session_id = viva.session_id;
  commit(event_kind::kSubmissionGraded, sub.submission_id,
         {{"submission", sub}, {"lab_id", lab.lab_id}, {"student_id", who.user_id}, {"breakdown", breakdown},
          {"viva", viva}});
  return {state_.submissions.at(sub.submission_id), state_.vivas.at(session_id)};
}

bool LabService::expire_if_due(VivaSession& session) {
  if (session.state != VivaState::kOpen || now() < session.expires_at()) return false;
  commit(event_kind::kVivaExpired, session.session_id, {{"session_id", session.session_id}});
  return true;
}

VivaAnswerResult LabService::answer_viva(const Principal& who, const std::string& session_id, std::size_t index,
                                         const std::string& answer_text) {
  require_role(who, Role::kStudent);
  std::unique_lock lock(mu_);
  auto it = state_.vivas.find(session_id);
  if (it == state_.vivas.end()) not_found("viva session", session_id);
  VivaSession& session = it->second;
  if (session.student_id != who.user_id) {
    throw Error(ErrorCode::kNotYourAllocation, fmt::format("viva {} belongs to another student", session_id), {session_id});
  }
  if (session.state == VivaState::kExpired || expire_if_due(session)) {
    throw Error(ErrorCode::kSessionExpired, fmt::format("viva {} has expired", session_id), {session_id});
  }
  if (session.state == VivaState::kCompleted) {
    throw Error(ErrorCode::kAlreadyAnswered, fmt::format("viva {} is already complete", session_id), {session_id});
  }
  if (index >= session.questions.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                fmt::format("question index {} outside [0, {})", index, session.questions.size()),
                {fmt::format("index={}", index)});
  }
  if (session.answers[index]) {
    throw Error(ErrorCode::kAlreadyAnswered, fmt::format("question {} already answered", index),
                {fmt::format("index={}", index)});
  }
  const auto scored =
      evaluator::score_viva_answer(answer_text, session.questions[index].rubric_answer, evaluator::feature_vectorizer());
  commit(event_kind::kVivaAnswered, session_id,
         {{"session_id", session_id}, {"index", index}, {"text", answer_text}, {"score", scored.score},
          {"feedback", scored.feedback}});
  const auto& updated = state_.vivas.at(session_id);
  return {scored.score, scored.feedback, updated, state_.submissions.at(updated.submission_id).submission.final_score};
}

VivaSession LabService::get_viva(const Principal& who, const std::string& session_id) {
  std::unique_lock lock(mu_);
  auto it = state_.vivas.find(session_id);
  if (it == state_.vivas.end()) not_found("viva session", session_id);
  if (who.role == Role::kStudent && it->second.student_id != who.user_id) not_found("viva session", session_id);
  if (who.role == Role::kFaculty) owned_lab(who, state_.submissions.at(it->second.submission_id).lab_id);
  expire_if_due(it->second);
  return it->second;
}

SubmissionRecord LabService::get_submission(const Principal& who, const std::string& submission_id) const {
  std::shared_lock lock(mu_);
  auto it = state_.submissions.find(submission_id);
  if (it == state_.submissions.end()) not_found("submission", submission_id);
  if (who.role == Role::kStudent && it->second.student_id != who.user_id) not_found("submission", submission_id);
  if (who.role == Role::kFaculty) owned_lab(who, it->second.lab_id);
  return it->second;
}

SubmissionRecord LabService::override_score(const Principal& who, const std::string& submission_id, double value,
                                            const std::string& reason) {
  require_role(who, Role::kFaculty);
  if (!std::isfinite(value) || value < 0.0 || value > 100.0) {
    throw Error(ErrorCode::kOutOfRange, fmt::format("override {} outside [0, 100]", value), {"override"});
  }
  if (reason.empty()) throw Error(ErrorCode::kValidationFailed, "an override needs a reason", {"reason"});
  std::unique_lock lock(mu_);
  auto it = state_.submissions.find(submission_id);
  if (it == state_.submissions.end()) not_found("submission", submission_id);
  owned_lab(who, it->second.lab_id);
  commit(event_kind::kScoreOverridden, submission_id,
         {{"submission_id", submission_id}, {"override", value}, {"reason", reason}, {"actor_id", who.user_id}});
  return state_.submissions.at(submission_id);
}

// ---------------------------------------------------------------- reports

ClassReport LabService::build_report(std::string scope, std::string scope_id, const std::vector<std::string>& lab_ids) const {
  ClassReport r;
  r.scope = std::move(scope);
  r.scope_id = std::move(scope_id);
  r.lab_ids = lab_ids;
  for (const auto& id : lab_ids) {
    if (state_.labs.at(id).mode == LabMode::kProctored) r.proctored_labs.push_back(id);
  }
  const std::set<std::string> labs(lab_ids.begin(), lab_ids.end());

  std::vector<const SubmissionRecord*> subs;
  for (const auto& [id, rec] : state_.submissions) {
    if (labs.contains(rec.lab_id)) subs.push_back(&rec);
  }
  r.submission_count = subs.size();

  std::vector<analytics::ErrorRow> error_rows;
  for (const auto* rec : subs) {
    const auto& s = rec->submission;
    if (!s.faculty_override || !s.ai_score) continue;
    r.pairs.emplace_back(*s.ai_score, *s.faculty_override);
    const auto& keywords = state_.labs.at(rec->lab_id).topic_keywords;
    error_rows.push_back({s.submission_id, *s.faculty_override, *s.ai_score, keywords.empty() ? "" : keywords.front()});
  }
  r.override_pairs = r.pairs.size();
  if (r.pairs.size() >= 2) r.agreement = analytics::agreement_report(r.pairs);
  if (!error_rows.empty()) r.errors = analytics::error_report(error_rows, config_.worst_cases);

  for (const auto* rec : subs) {
    if (!rec->submission.final_score) continue;
    r.ranking.push_back({0, rec->submission.submission_id, rec->student_id, rec->lab_id, *rec->submission.final_score,
                         rec->completed_at});
  }
  std::sort(r.ranking.begin(), r.ranking.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.final_score != b.final_score) return a.final_score > b.final_score;
    if (a.completed_at != b.completed_at) return a.completed_at < b.completed_at;
    return a.submission_id < b.submission_id;
  });
  for (std::size_t i = 0; i < r.ranking.size(); ++i) r.ranking[i].rank = i + 1;

  // Document frequencies come from the submissions themselves, so shared
  // boilerplate weighs less than distinctive code.
  std::vector<std::string> codes;
  for (const auto* rec : subs) codes.push_back(rec->submission.code_text);
  const textsim::TfidfVectorizer vectorizer(textsim::CorpusStats::from_documents(codes));
  std::vector<textsim::TextVector> vecs;
  for (const auto& c : codes) vecs.push_back(vectorizer.vectorize(c));
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if (subs[i]->student_id == subs[j]->student_id) continue;
      const double sim = textsim::cosine(vecs[i], vecs[j]);
      if (sim >= config_.plagiarism_threshold) {
        r.plagiarism_alerts.push_back({subs[i]->submission.submission_id, subs[j]->submission.submission_id,
                                       subs[i]->student_id, subs[j]->student_id, sim});
      }
    }
  }
  std::stable_sort(r.plagiarism_alerts.begin(), r.plagiarism_alerts.end(),
                   [](const PlagiarismAlert& a, const PlagiarismAlert& b) { return a.similarity > b.similarity; });
  return r;
}

ClassReport LabService::lab_report(const Principal& who, const std::string& lab_id) const {
  std::shared_lock lock(mu_);
  owned_lab(who, lab_id);
  return build_report("lab", lab_id, {lab_id});
}

ClassReport LabService::section_report(const Principal& who, const std::string& section) const {
  require_role(who, Role::kFaculty);
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, lab] : state_.labs) {
    if (lab.section == section && lab.owner_id == who.user_id) ids.push_back(id);
  }
  if (ids.empty()) not_found("section", section);
  return build_report("section", section, ids);
}

analytics::ProgressProfile LabService::my_progress(const Principal& who) const {
  std::shared_lock lock(mu_);
  auto it = state_.users.find(who.user_id);
  if (it == state_.users.end()) not_found("user", who.user_id);
  const auto events = progress_events(state_, it->second);
  return analytics::build_progress_profile(who.user_id, who.role, events);
}

nlohmann::ordered_json LabService::export_submission(const Principal& who, const std::string& submission_id) const {
  const SubmissionRecord rec = get_submission(who, submission_id);
  std::shared_lock lock(mu_);
  const Lab& lab = state_.labs.at(rec.lab_id);
  const Allocation& alloc = state_.allocations.at(rec.submission.allocation_id);
  const auto& s = rec.submission;
  ordered_json j;
  j["format"] = "labgrade-export";
  j["format_version"] = 1;
  j["lab"] = {{"lab_id", lab.lab_id}, {"title", lab.title}, {"section", lab.section}, {"mode", to_string(lab.mode)}};
  j["question"] = alloc.question_text;
  j["code"] = {{"language", s.language_tag}, {"text", s.code_text}, {"sha256", sha256_hex(s.code_text)}};
  j["scores"] = {{"ai_score", opt(s.ai_score)},
                 {"viva_score", opt(s.viva_score)},
                 {"faculty_override", opt(s.faculty_override)},
                 {"final_score", opt(s.final_score)}};
  j["feedback"] = s.feedback;
  j["submitted_at"] = to_epoch_seconds(s.submitted_at);
  return j;
}

}  // namespace labgrade::labsvc
