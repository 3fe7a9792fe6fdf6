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

#include "labgrade/core/time.hpp"

namespace labgrade {

unsigned iso_weekday(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  return std::chrono::weekday{day}.iso_encoding();
}

Timestamp iso_week_start(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const auto back = std::chrono::days{std::chrono::weekday{day}.iso_encoding() - 1};
  return std::chrono::time_point_cast<std::chrono::seconds>(day - back);
}

Timestamp SystemClock::now() const {
  return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace labgrade
