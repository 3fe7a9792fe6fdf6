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

#include "labgrade/labsvc/api.hpp"

#include <fmt/format.h>

#include "labgrade/analytics/export.hpp"
#include "labgrade/core/json_io.hpp"

namespace labgrade::labsvc {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const std::set<Role> kFaculty = {Role::kFaculty};
const std::set<Role> kStudent = {Role::kStudent};
const std::set<Role> kAnyRole = {Role::kFaculty, Role::kStudent};

std::vector<std::string> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto end = std::min(path.find('/', start), path.size());
    if (end > start) out.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool match(const std::vector<std::string>& pattern, const std::vector<std::string>& path, PathParams& params) {
  if (pattern.size() != path.size()) return false;
  PathParams captured;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const auto& p = pattern[i];
    if (p.size() > 2 && p.front() == '{' && p.back() == '}') {
      captured[p.substr(1, p.size() - 2)] = path[i];
    } else if (p != path[i]) {
      return false;
    }
  }
  params = std::move(captured);
  return true;
}

ApiResponse error_response(const Error& e) { return {http_status(e.code()), error_body(e)}; }

ApiResponse ok(ordered_json body, int status = 200) { return {status, std::move(body)}; }

ordered_json ordered(const json& j) { return ordered_json::parse(j.dump()); }

std::string bearer_token(const std::string& header) {
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() <= kPrefix.size() || header.compare(0, kPrefix.size(), kPrefix) != 0) return {};
  return header.substr(kPrefix.size());
}

void require_fields(const json& body, std::initializer_list<const char*> fields) {
  std::vector<std::string> missing;
  for (const char* f : fields) {
    if (!body.contains(f)) missing.emplace_back(f);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kValidationFailed, fmt::format("missing fields: {}", fmt::join(missing, ", ")), missing);
  }
}

ordered_json viva_view(const VivaSession& v, bool with_rubric) {
  ordered_json questions = ordered_json::array();
  for (std::size_t i = 0; i < v.questions.size(); ++i) {
    ordered_json q{{"index", i}, {"question", v.questions[i].question}};
    if (with_rubric) q["rubric_answer"] = v.questions[i].rubric_answer;
    if (const auto& a = v.answers[i]) {
      q["answer"] = {{"text", a->text}, {"score", a->score}, {"feedback", a->feedback}};
    } else {
      q["answer"] = nullptr;
    }
    questions.push_back(std::move(q));
  }
  return {{"session_id", v.session_id},
          {"allocation_id", v.allocation_id},
          {"submission_id", v.submission_id},
          {"state", to_string(v.state)},
          {"started_at", to_epoch_seconds(v.started_at)},
          {"expires_at", to_epoch_seconds(v.expires_at())},
          {"duration_minutes", v.duration_minutes},
          {"answered", v.answered()},
          {"viva_score", v.viva_score ? ordered_json(*v.viva_score) : ordered_json(nullptr)},
          {"questions", std::move(questions)}};
}

ordered_json submission_view(const SubmissionRecord& r) {
  ordered_json j = ordered(json(r.submission));
  j["lab_id"] = r.lab_id;
  j["student_id"] = r.student_id;
  j["revision"] = r.revision;
  j["viva_session_id"] = r.viva_session_id;
  j["breakdown"] = ordered(json(r.breakdown));
  return j;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadCredentials:
    case ErrorCode::kUnauthorized:
      return 401;
    case ErrorCode::kAccountDisabled:
    case ErrorCode::kForbidden:
    case ErrorCode::kNotYourAllocation:
      return 403;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kAlreadyAllocated:
    case ErrorCode::kLabNotActive:
    case ErrorCode::kDeadlinePassed:
    case ErrorCode::kSessionExpired:
    case ErrorCode::kAlreadyAnswered:
    case ErrorCode::kDuplicateId:
      return 409;
    case ErrorCode::kGradingUnavailable:
    case ErrorCode::kBackendUnavailable:
      return 503;
    case ErrorCode::kIo:
    case ErrorCode::kAddressInUse:
    case ErrorCode::kSchemaMismatch:
    case ErrorCode::kMalformedModel:
      return 500;
    default:
      return 422;
  }
}

ordered_json error_body(const Error& e) {
  return {{"code", error_code_name(e.code())}, {"message", e.what()}, {"details", e.details()}};
}

void ApiRouter::add(std::string method, std::string pattern, bool is_public, std::set<Role> roles, Handler handler) {
  auto segments = split_path(pattern);
  routes_.push_back({{std::move(method), std::move(pattern), is_public, std::move(roles)}, std::move(segments),
                     std::move(handler)});
}

std::vector<RouteSpec> ApiRouter::routes() const {
  std::vector<RouteSpec> out;
  for (const auto& r : routes_) out.push_back(r.spec);
  return out;
}

ApiRouter::ApiRouter(LabService& service) : service_(service) {
  auto& svc = service_;

  add("POST", "/login", true, {}, [&svc](const Principal*, const PathParams&, const json& body) {
    require_fields(body, {"username", "password"});
    const auto t = svc.login(body.at("username").get<std::string>(), body.at("password").get<std::string>());
    return ok({{"token", t.token},
               {"user_id", t.user_id},
               {"role", to_string(t.role)},
               {"issued_at", to_epoch_seconds(t.issued_at)},
               {"expires_at", to_epoch_seconds(t.expires_at)}});
  });
  add("GET", "/healthz", true, {}, [&svc](const Principal*, const PathParams&, const json&) {
    return ok({{"status", "ok"}, {"grading", svc.grading_enabled()}, {"last_seq", svc.last_seq()}});
  });

  add("POST", "/labs", false, kFaculty, [&svc](const Principal* who, const PathParams&, const json& body) {
    require_fields(body, {"title", "topic_keywords", "difficulty", "viva_duration", "mode", "deadline"});
    return ok(ordered(json(svc.create_lab(*who, body.get<Lab>()))), 201);
  });
  add("GET", "/labs/{id}", false, kAnyRole, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(ordered(json(svc.get_lab(*who, p.at("id")))));
  });
  add("POST", "/labs/{id}/allocate", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json& body) {
    auto roster = body.value("roster", std::vector<std::string>{});
    const auto s = svc.allocate(*who, p.at("id"), std::move(roster));
    ordered_json students = ordered_json::array();
    for (const auto& st : s.students) {
      students.push_back({{"student_id", st.student_id}, {"allocation_id", st.allocation_id}, {"status", st.status}});
    }
    return ok({{"lab_id", s.lab_id}, {"count", s.count}, {"students", std::move(students)}});
  });
  add("DELETE", "/labs/{id}/allocations", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(ordered(json(svc.deallocate(*who, p.at("id")))));
  });
  add("POST", "/labs/{id}/activate", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(ordered(json(svc.activate(*who, p.at("id")))));
  });
  add("POST", "/labs/{id}/close", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(ordered(json(svc.close(*who, p.at("id")))));
  });
  add("GET", "/labs/{id}/report", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(to_json(svc.lab_report(*who, p.at("id"))));
  });
  add("GET", "/sections/{id}/report", false, kFaculty, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(to_json(svc.section_report(*who, p.at("id"))));
  });

  add("GET", "/me/labs", false, kAnyRole, [&svc](const Principal* who, const PathParams&, const json&) {
    ordered_json out = ordered_json::array();
    for (const auto& m : svc.my_labs(*who)) {
      ordered_json item{{"lab", ordered(json(m.lab))}};
      if (who->role == Role::kStudent) {
        // The rubric answer stays server-side.
        ordered_json a = ordered(json(*m.allocation));
        a.erase("rubric_answer");
        item["allocation"] = std::move(a);
        item["submission_id"] = m.submission_id ? ordered_json(*m.submission_id) : ordered_json(nullptr);
      } else {
        item["allocation_count"] = m.allocation_count;
      }
      out.push_back(std::move(item));
    }
    return ok({{"labs", std::move(out)}});
  });
  add("GET", "/me/progress", false, kAnyRole, [&svc](const Principal* who, const PathParams&, const json&) {
    return ok(analytics::to_json(svc.my_progress(*who)));
  });

  add("POST", "/allocations/{id}/submissions", false, kStudent,
      [&svc](const Principal* who, const PathParams& p, const json& body) {
        require_fields(body, {"code"});
        const auto r = svc.submit_code(*who, p.at("id"), body.at("code").get<std::string>(),
                                       body.value("language", std::string{}), body.value("resubmit", false));
        return ok({{"submission", submission_view(r.record)}, {"viva", viva_view(r.viva, false)}}, 201);
      });
  add("GET", "/submissions/{id}", false, kAnyRole, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(submission_view(svc.get_submission(*who, p.at("id"))));
  });
  add("POST", "/submissions/{id}/override", false, kFaculty,
      [&svc](const Principal* who, const PathParams& p, const json& body) {
        require_fields(body, {"override", "reason"});
        const auto r = svc.override_score(*who, p.at("id"), body.at("override").get<double>(),
                                          body.at("reason").get<std::string>());
        ordered_json audit = ordered_json::array();
        for (const auto& a : svc.audit_trail(p.at("id"))) {
          audit.push_back({{"seq", a.seq},
                           {"action", a.action},
                           {"actor_id", a.actor_id},
                           {"before", a.before ? ordered_json(*a.before) : ordered_json(nullptr)},
                           {"after", a.after ? ordered_json(*a.after) : ordered_json(nullptr)},
                           {"reason", a.reason},
                           {"at", to_epoch_seconds(a.at)}});
        }
        return ok({{"submission", submission_view(r)}, {"audit", std::move(audit)}});
      });
  add("GET", "/submissions/{id}/export", false, kAnyRole, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(svc.export_submission(*who, p.at("id")));
  });

  add("GET", "/viva/{session}", false, kAnyRole, [&svc](const Principal* who, const PathParams& p, const json&) {
    return ok(viva_view(svc.get_viva(*who, p.at("session")), who->role == Role::kFaculty));
  });
  add("POST", "/viva/{session}/answers", false, kStudent,
      [&svc](const Principal* who, const PathParams& p, const json& body) {
        require_fields(body, {"index", "answer"});
        const auto r = svc.answer_viva(*who, p.at("session"), body.at("index").get<std::size_t>(),
                                       body.at("answer").get<std::string>());
        return ok({{"score", r.score},
                   {"feedback", r.feedback},
                   {"final_score", r.final_score ? ordered_json(*r.final_score) : ordered_json(nullptr)},
                   {"session", viva_view(r.session, false)}});
      });
}

ApiResponse ApiRouter::handle(const ApiRequest& request) const {
  const auto path = split_path(request.path);
  const Route* route = nullptr;
  PathParams params;
  bool path_known = false;
  for (const auto& r : routes_) {
    PathParams p;
    if (!match(r.segments, path, p)) continue;
    path_known = true;
    if (r.spec.method == request.method) {
      route = &r;
      params = std::move(p);
      break;
    }
  }
  if (route == nullptr) {
    if (path_known) {
      return {405, {{"code", "MethodNotAllowed"}, {"message", fmt::format("{} not allowed here", request.method)},
                    {"details", ordered_json::array()}}};
    }
    return error_response(Error(ErrorCode::kNotFound, fmt::format("no route for {}", request.path), {request.path}));
  }

  try {
    std::optional<Principal> who;
    if (!route->spec.is_public) {
      const auto token = bearer_token(request.authorization);
      if (token.empty()) throw Error(ErrorCode::kUnauthorized, "missing bearer token");
      who = service_.authenticate(token);
      if (!route->spec.roles.contains(who->role)) {
        throw Error(ErrorCode::kForbidden,
                    fmt::format("{} may not call {} {}", to_string(who->role), route->spec.method, route->spec.pattern),
                    {std::string(to_string(who->role))});
      }
    }
    json body = json::object();
    if (!request.body.empty()) {
      try {
        body = json::parse(request.body);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::kMalformedJson, fmt::format("request body is not JSON: {}", e.what()));
      }
      if (!body.is_object()) throw Error(ErrorCode::kMalformedJson, "request body must be a JSON object");
    }
    return route->handler(who ? &*who : nullptr, params, body);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return error_response(Error(ErrorCode::kValidationFailed, fmt::format("bad request field: {}", e.what())));
  } catch (const std::exception& e) {
    return {500, {{"code", "Internal"}, {"message", e.what()}, {"details", ordered_json::array()}}};
  }
}

}  // namespace labgrade::labsvc
