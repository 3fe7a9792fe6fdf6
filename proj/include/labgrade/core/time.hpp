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

namespace labgrade {

using Timestamp = std::chrono::sys_seconds;

inline Timestamp from_epoch_seconds(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }
inline std::int64_t to_epoch_seconds(Timestamp t) { return t.time_since_epoch().count(); }

// 1 = Monday ... 7 = Sunday.
unsigned iso_weekday(Timestamp t);

// Midnight UTC of the Monday starting the ISO week containing t.
Timestamp iso_week_start(Timestamp t);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

}  // namespace labgrade
