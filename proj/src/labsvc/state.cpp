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

#include "labgrade/labsvc/state.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"
#include "labgrade/core/json_io.hpp"

namespace labgrade::labsvc {
namespace {

using json = nlohmann::json;

[[noreturn]] void inconsistent(const StoredEvent& e, std::string_view what) {
  throw Error(ErrorCode::kIo, fmt::format("event {} ({}): {}", e.seq, e.kind, what), {fmt::format("seq={}", e.seq)});
}

std::optional<double> opt_double(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

evaluator::GradeBreakdown breakdown_from_json(const json& j) {
  evaluator::GradeBreakdown g;
  g.correctness_score = j.at("correctness_score").get<double>();
  g.readability_score = j.at("readability_score").get<double>();
  g.complexity_score = j.at("complexity_score").get<double>();
  g.weights = j.at("weights").get<GradeWeights>();
  g.final_score = j.at("final").get<double>();
  g.feedback = j.at("feedback").get<std::vector<std::string>>();
  return g;
}

VivaSession& find_viva(ServiceState& s, const StoredEvent& e) {
  auto it = s.vivas.find(e.payload.at("session_id").get<std::string>());
  if (it == s.vivas.end()) inconsistent(e, "unknown viva session");
  return it->second;
}

SubmissionRecord& find_submission(ServiceState& s, const StoredEvent& e, const std::string& id) {
  auto it = s.submissions.find(id);
  if (it == s.submissions.end()) inconsistent(e, "unknown submission");
  return it->second;
}

Lab& find_lab(ServiceState& s, const StoredEvent& e) {
  auto it = s.labs.find(e.payload.at("lab_id").get<std::string>());
  if (it == s.labs.end()) inconsistent(e, "unknown lab");
  return it->second;
}

// Mean over every question; unanswered ones count as 0.
double session_mean(const VivaSession& v) {
  if (v.questions.empty()) return 0.0;
  double total = 0.0;
  for (const auto& a : v.answers) total += a ? a->score : 0.0;
  return total / static_cast<double>(v.questions.size());
}

void finish_viva(ServiceState& s, const StoredEvent& e, VivaSession& v, VivaState end_state) {
  v.state = end_state;
  v.viva_score = session_mean(v);
  v.ended_at = e.recorded_at;
  auto& rec = find_submission(s, e, v.submission_id);
  rec.submission.viva_score = v.viva_score;
  rec.completed_at = e.recorded_at;
  recompute_final(s, rec);
}

void apply_submission(ServiceState& s, const StoredEvent& e) {
  const auto& p = e.payload;
  SubmissionRecord rec;
  rec.submission = p.at("submission").get<Submission>();
  rec.lab_id = p.at("lab_id").get<std::string>();
  rec.student_id = p.at("student_id").get<std::string>();
  rec.breakdown = breakdown_from_json(p.at("breakdown"));
  VivaSession viva = p.at("viva").get<VivaSession>();
  rec.viva_session_id = viva.session_id;
  rec.completed_at = rec.submission.submitted_at;

  const auto& alloc_id = rec.submission.allocation_id;
  if (!s.allocations.contains(alloc_id)) inconsistent(e, "unknown allocation");
  if (!s.labs.contains(rec.lab_id)) inconsistent(e, "unknown lab");

  std::optional<double> prior_final;
  if (auto it = s.submission_by_allocation.find(alloc_id); it != s.submission_by_allocation.end()) {
    auto& old = find_submission(s, e, it->second);
    if (old.submission.submission_id != rec.submission.submission_id) inconsistent(e, "resubmission changes id");
    prior_final = old.submission.final_score;
    rec.revision = old.revision + 1;
    s.vivas.erase(old.viva_session_id);
  } else {
    ++s.submissions_created;
  }
  ++s.vivas_created;
  s.vivas[viva.session_id] = std::move(viva);
  const std::string id = rec.submission.submission_id;
  s.submission_by_allocation[alloc_id] = id;
  auto& stored = s.submissions[id] = std::move(rec);
  recompute_final(s, stored);
  if (stored.revision > 1) {
    s.audit.push_back({e.seq, "resubmission", stored.student_id, id, prior_final, stored.submission.final_score,
                       "resubmitted while lab active", e.recorded_at});
  }
}

}  // namespace

std::string_view to_string(VivaState s) {
  switch (s) {
    case VivaState::kOpen: return "Open";
    case VivaState::kCompleted: return "Completed";
    case VivaState::kExpired: return "Expired";
  }
  return "Open";
}

std::size_t VivaSession::answered() const {
  return static_cast<std::size_t>(std::count_if(answers.begin(), answers.end(), [](const auto& a) { return a.has_value(); }));
}

void recompute_final(ServiceState& state, SubmissionRecord& record) {
  const auto lab = state.labs.find(record.lab_id);
  const double viva_weight = lab == state.labs.end() ? LabPolicy{}.viva_weight : lab->second.policy.viva_weight;
  auto& sub = record.submission;
  sub.final_score = compose_final_score(sub.ai_score, sub.viva_score, sub.faculty_override, viva_weight);
}

void apply_event(ServiceState& s, const StoredEvent& e) {
  if (e.seq != s.last_seq + 1) inconsistent(e, fmt::format("expected sequence {}", s.last_seq + 1));
  const auto& p = e.payload;
  try {
    if (e.kind == event_kind::kUserRegistered) {
      auto user = p.at("user").get<User>();
      if (s.users.contains(user.user_id)) inconsistent(e, "user already registered");
      s.users[user.user_id] = std::move(user);
    } else if (e.kind == event_kind::kUserStatusChanged) {
      auto it = s.users.find(p.at("user_id").get<std::string>());
      if (it == s.users.end()) inconsistent(e, "unknown user");
      it->second.disabled = p.at("disabled").get<bool>();
    } else if (e.kind == event_kind::kLabCreated) {
      auto lab = p.at("lab").get<Lab>();
      if (s.labs.contains(lab.lab_id)) inconsistent(e, "lab id reused");
      ++s.labs_created;
      s.labs[lab.lab_id] = std::move(lab);
    } else if (e.kind == event_kind::kLabAllocated) {
      auto& lab = find_lab(s, e);
      if (lab.state != LabState::kDraft) inconsistent(e, "lab not Draft");
      for (const auto& ja : p.at("allocations")) {
        auto a = ja.get<Allocation>();
        s.allocations[a.allocation_id] = std::move(a);
      }
      lab.state = LabState::kAllocated;
    } else if (e.kind == event_kind::kLabDeallocated) {
      auto& lab = find_lab(s, e);
      if (lab.state != LabState::kAllocated) inconsistent(e, "lab not Allocated");
      std::erase_if(s.allocations, [&](const auto& kv) { return kv.second.lab_id == lab.lab_id; });
      lab.state = LabState::kDraft;
    } else if (e.kind == event_kind::kLabActivated || e.kind == event_kind::kLabClosed) {
      auto& lab = find_lab(s, e);
      const auto next = e.kind == event_kind::kLabActivated ? LabState::kActive : LabState::kClosed;
      if (!validate_transition(lab.state, next).accepted) inconsistent(e, "illegal lab transition");
      lab.state = next;
      if (next == LabState::kActive) s.lab_activated_at[lab.lab_id] = e.recorded_at;
    } else if (e.kind == event_kind::kSubmissionGraded) {
      apply_submission(s, e);
    } else if (e.kind == event_kind::kVivaAnswered) {
      auto& v = find_viva(s, e);
      const auto index = p.at("index").get<std::size_t>();
      if (v.state != VivaState::kOpen) inconsistent(e, "viva not open");
      if (index >= v.answers.size() || v.answers[index]) inconsistent(e, "bad viva index");
      v.answers[index] = VivaAnswer{p.at("text").get<std::string>(), p.at("score").get<double>(),
                                    p.at("feedback").get<std::string>(), e.recorded_at};
      if (v.answered() == v.questions.size()) finish_viva(s, e, v, VivaState::kCompleted);
    } else if (e.kind == event_kind::kVivaExpired) {
      auto& v = find_viva(s, e);
      if (v.state != VivaState::kOpen) inconsistent(e, "viva not open");
      finish_viva(s, e, v, VivaState::kExpired);
    } else if (e.kind == event_kind::kScoreOverridden) {
      auto& rec = find_submission(s, e, p.at("submission_id").get<std::string>());
      const double value = p.at("override").get<double>();
      s.audit.push_back({e.seq, "override", p.at("actor_id").get<std::string>(), rec.submission.submission_id,
                         rec.submission.final_score, value, p.at("reason").get<std::string>(), e.recorded_at});
      rec.submission.faculty_override = value;
      recompute_final(s, rec);
    } else {
      inconsistent(e, "unknown event kind");
    }
  } catch (const nlohmann::json::exception& ex) {
    inconsistent(e, ex.what());
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::kIo) throw;
    inconsistent(e, ex.what());
  }
  s.last_seq = e.seq;
}

void to_json(nlohmann::json& j, const VivaSession& v) {
  json questions = json::array();
  for (const auto& q : v.questions) questions.push_back({{"question", q.question}, {"rubric_answer", q.rubric_answer}});
  json answers = json::array();
  for (const auto& a : v.answers) {
    if (!a) {
      answers.push_back(nullptr);
    } else {
      answers.push_back({{"text", a->text},
                         {"score", a->score},
                         {"feedback", a->feedback},
                         {"answered_at", to_epoch_seconds(a->answered_at)}});
    }
  }
  j = {{"session_id", v.session_id},
       {"allocation_id", v.allocation_id},
       {"submission_id", v.submission_id},
       {"student_id", v.student_id},
       {"questions", std::move(questions)},
       {"answers", std::move(answers)},
       {"state", to_string(v.state)},
       {"started_at", to_epoch_seconds(v.started_at)},
       {"duration_minutes", v.duration_minutes},
       {"viva_score", opt_json(v.viva_score)},
       {"ended_at", v.ended_at ? json(to_epoch_seconds(*v.ended_at)) : json(nullptr)}};
}

void from_json(const nlohmann::json& j, VivaSession& v) {
  v.session_id = j.at("session_id").get<std::string>();
  v.allocation_id = j.at("allocation_id").get<std::string>();
  v.submission_id = j.at("submission_id").get<std::string>();
  v.student_id = j.at("student_id").get<std::string>();
  v.questions.clear();
  for (const auto& q : j.at("questions")) {
    v.questions.push_back({q.at("question").get<std::string>(), q.at("rubric_answer").get<std::string>()});
  }
  v.answers.clear();
  for (const auto& a : j.at("answers")) {
    if (a.is_null()) {
      v.answers.emplace_back();
    } else {
      v.answers.push_back(VivaAnswer{a.at("text").get<std::string>(), a.at("score").get<double>(),
                                     a.at("feedback").get<std::string>(),
                                     from_epoch_seconds(a.at("answered_at").get<std::int64_t>())});
    }
  }
  if (v.answers.size() != v.questions.size()) throw Error(ErrorCode::kIo, "viva answers and questions differ in length");
  const auto state = j.at("state").get<std::string>();
  v.state = state == "Completed" ? VivaState::kCompleted : state == "Expired" ? VivaState::kExpired : VivaState::kOpen;
  v.started_at = from_epoch_seconds(j.at("started_at").get<std::int64_t>());
  v.duration_minutes = j.at("duration_minutes").get<int>();
  v.viva_score = opt_double(j, "viva_score");
  const auto& ended = j.at("ended_at");
  v.ended_at = ended.is_null() ? std::nullopt : std::optional(from_epoch_seconds(ended.get<std::int64_t>()));
}

void to_json(nlohmann::json& j, const SubmissionRecord& r) {
  j = {{"submission", r.submission},
       {"lab_id", r.lab_id},
       {"student_id", r.student_id},
       {"breakdown", r.breakdown},
       {"viva_session_id", r.viva_session_id},
       {"revision", r.revision},
       {"completed_at", to_epoch_seconds(r.completed_at)}};
}

void from_json(const nlohmann::json& j, SubmissionRecord& r) {
  r.submission = j.at("submission").get<Submission>();
  r.lab_id = j.at("lab_id").get<std::string>();
  r.student_id = j.at("student_id").get<std::string>();
  r.breakdown = breakdown_from_json(j.at("breakdown"));
  r.viva_session_id = j.at("viva_session_id").get<std::string>();
  r.revision = j.at("revision").get<int>();
  r.completed_at = from_epoch_seconds(j.at("completed_at").get<std::int64_t>());
}

json state_to_json(const ServiceState& s) {
  json activated = json::object();
  for (const auto& [id, t] : s.lab_activated_at) activated[id] = to_epoch_seconds(t);
  json audit = json::array();
  for (const auto& a : s.audit) {
    audit.push_back({{"seq", a.seq},
                     {"action", a.action},
                     {"actor_id", a.actor_id},
                     {"submission_id", a.submission_id},
                     {"before", opt_json(a.before)},
                     {"after", opt_json(a.after)},
                     {"reason", a.reason},
                     {"at", to_epoch_seconds(a.at)}});
  }
  return {{"last_seq", s.last_seq},
          {"users", s.users},
          {"labs", s.labs},
          {"lab_activated_at", std::move(activated)},
          {"allocations", s.allocations},
          {"submissions", s.submissions},
          {"submission_by_allocation", s.submission_by_allocation},
          {"vivas", s.vivas},
          {"audit", std::move(audit)},
          {"labs_created", s.labs_created},
          {"submissions_created", s.submissions_created},
          {"vivas_created", s.vivas_created}};
}

ServiceState state_from_json(const json& j) {
  ServiceState s;
  try {
    s.last_seq = j.at("last_seq").get<std::uint64_t>();
    s.users = j.at("users").get<std::map<std::string, User>>();
    s.labs = j.at("labs").get<std::map<std::string, Lab>>();
    for (const auto& [id, t] : j.at("lab_activated_at").items()) s.lab_activated_at[id] = from_epoch_seconds(t.get<std::int64_t>());
    s.allocations = j.at("allocations").get<std::map<std::string, Allocation>>();
    s.submissions = j.at("submissions").get<std::map<std::string, SubmissionRecord>>();
    s.submission_by_allocation = j.at("submission_by_allocation").get<std::map<std::string, std::string>>();
    s.vivas = j.at("vivas").get<std::map<std::string, VivaSession>>();
    for (const auto& a : j.at("audit")) {
      s.audit.push_back({a.at("seq").get<std::uint64_t>(), a.at("action").get<std::string>(),
                         a.at("actor_id").get<std::string>(), a.at("submission_id").get<std::string>(),
                         opt_double(a, "before"), opt_double(a, "after"), a.at("reason").get<std::string>(),
                         from_epoch_seconds(a.at("at").get<std::int64_t>())});
    }
    s.labs_created = j.at("labs_created").get<std::uint64_t>();
    s.submissions_created = j.at("submissions_created").get<std::uint64_t>();
    s.vivas_created = j.at("vivas_created").get<std::uint64_t>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kIo, fmt::format("malformed state snapshot: {}", ex.what()));
  }
  return s;
}

std::vector<analytics::ProgressEvent> progress_events(const ServiceState& state, const User& user) {
  using analytics::ProgressEventKind;
  std::vector<analytics::ProgressEvent> out;
  auto section_of = [&](const std::string& lab_id) {
    auto it = state.labs.find(lab_id);
    return it == state.labs.end() ? std::string{} : it->second.section;
  };
  if (user.role == Role::kStudent) {
    for (const auto& [id, a] : state.allocations) {
      if (a.student_id != user.user_id) continue;
      out.push_back({user.user_id, ProgressEventKind::kAssigned, a.lab_id, section_of(a.lab_id), std::nullopt,
                     a.generated_at});
    }
    for (const auto& [id, r] : state.submissions) {
      if (r.student_id != user.user_id || !r.submission.final_score) continue;
      out.push_back({user.user_id, ProgressEventKind::kCompleted, r.lab_id, section_of(r.lab_id),
                     r.submission.final_score, r.completed_at});
    }
    return out;
  }
  for (const auto& [lab_id, lab] : state.labs) {
    if (lab.owner_id != user.user_id) continue;
    if (auto it = state.lab_activated_at.find(lab_id); it != state.lab_activated_at.end()) {
      out.push_back({user.user_id, ProgressEventKind::kConducted, lab_id, lab.section, std::nullopt, it->second});
    }
    double total = 0.0;
    std::size_t n = 0;
    Timestamp latest{};
    for (const auto& [id, r] : state.submissions) {
      if (r.lab_id != lab_id || !r.submission.final_score) continue;
      total += *r.submission.final_score;
      ++n;
      latest = std::max(latest, r.completed_at);
    }
    if (n > 0) {
      out.push_back({user.user_id, ProgressEventKind::kCompleted, lab_id, lab.section, total / static_cast<double>(n),
                     latest});
    }
  }
  return out;
}

}  // namespace labgrade::labsvc
