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
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "labgrade/core/time.hpp"

namespace labgrade::labsvc {

struct StoredEvent {
  std::uint64_t seq = 0;
  std::string kind;
  std::string entity_id;
  nlohmann::json payload;
  Timestamp recorded_at{};

  bool operator==(const StoredEvent&) const = default;
};

void to_json(nlohmann::json& j, const StoredEvent& e);
void from_json(const nlohmann::json& j, StoredEvent& e);

struct Snapshot {
  std::uint64_t seq = 0;  // last event folded into state
  nlohmann::json state;
};

// Append-only, single-writer log of StoredEvents, one JSON document per line
// in <dir>/events.jsonl. Sequence numbers start at 1 and increase by one.
// Without a directory the log lives in memory only.
class EventLog {
 public:
  EventLog() = default;
  // Opens or creates the log. A final line without its newline is a write
  // torn by a crash; it is cut off. Any other unreadable line, or a gap in the
  // sequence, throws Error(kIo).
  EventLog(const std::filesystem::path& dir, bool sync_writes);
  ~EventLog();

  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  // Events present when the log was opened.
  const std::vector<StoredEvent>& recovered() const { return recovered_; }

  StoredEvent append(std::string kind, std::string entity_id, nlohmann::json payload, Timestamp at);

  std::uint64_t last_seq() const;
  bool persistent() const { return fd_ >= 0; }
  const std::filesystem::path& dir() const { return dir_; }

  // <dir>/snapshot.json, replaced atomically. No-op for an in-memory log.
  void write_snapshot(const Snapshot& snapshot) const;
  std::optional<Snapshot> read_snapshot() const;

  static constexpr const char* kLogFile = "events.jsonl";
  static constexpr const char* kSnapshotFile = "snapshot.json";

 private:
  std::filesystem::path dir_;
  int fd_ = -1;
  bool sync_ = true;
  mutable std::mutex mu_;
  std::uint64_t last_seq_ = 0;
  std::vector<StoredEvent> recovered_;
};

}  // namespace labgrade::labsvc
