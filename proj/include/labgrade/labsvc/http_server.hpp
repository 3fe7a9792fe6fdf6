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

#include <memory>
#include <string>

#include "labgrade/labsvc/api.hpp"

namespace httplib {
class Server;
}

namespace labgrade::labsvc {

// Serves an ApiRouter over HTTP/1.1 with JSON bodies.
class HttpServer {
 public:
  explicit HttpServer(const ApiRouter& router);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // Error(kAddressInUse) when the address cannot be bound.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  const ApiRouter& router_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace labgrade::labsvc
