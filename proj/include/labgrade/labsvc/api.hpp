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

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "labgrade/core/errors.hpp"
#include "labgrade/labsvc/service.hpp"

namespace labgrade::labsvc {

struct ApiRequest {
  std::string method;
  std::string path;
  std::string authorization;  // raw Authorization header
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

using PathParams = std::map<std::string, std::string>;

struct RouteSpec {
  std::string method;
  std::string pattern;        // segments like "{id}" capture
  bool is_public = false;     // no token needed
  std::set<Role> roles;       // callers allowed past the gate; empty denies all
};

// HTTP status for each error code.
int http_status(ErrorCode code);
nlohmann::ordered_json error_body(const Error& e);

// Transport-independent dispatcher. Every request walks the same gate:
// route match (404/405), bearer token (401), role check against the route's
// explicit allow-list (403), then the handler. Ownership checks inside the
// service can still refuse an allowed role.
class ApiRouter {
 public:
  explicit ApiRouter(LabService& service);

  ApiResponse handle(const ApiRequest& request) const;
  std::vector<RouteSpec> routes() const;

 private:
  using Handler = std::function<ApiResponse(const Principal*, const PathParams&, const nlohmann::json&)>;
  struct Route {
    RouteSpec spec;
    std::vector<std::string> segments;
    Handler handler;
  };

  void add(std::string method, std::string pattern, bool is_public, std::set<Role> roles, Handler handler);

  LabService& service_;
  std::vector<Route> routes_;
};

}  // namespace labgrade::labsvc
