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

#include "labgrade/labsvc/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"

namespace labgrade::labsvc {
namespace {

[[noreturn]] void io_error(const std::string& what, const std::filesystem::path& path) {
  throw Error(ErrorCode::kIo, fmt::format("{} {}: {}", what, path.string(), std::strerror(errno)), {path.string()});
}

void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_error("write", path);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void to_json(nlohmann::json& j, const StoredEvent& e) {
  j = nlohmann::json{{"seq", e.seq},
                     {"kind", e.kind},
                     {"entity_id", e.entity_id},
                     {"recorded_at", to_epoch_seconds(e.recorded_at)},
                     {"payload", e.payload}};
}

void from_json(const nlohmann::json& j, StoredEvent& e) {
  e.seq = j.at("seq").get<std::uint64_t>();
  e.kind = j.at("kind").get<std::string>();
  e.entity_id = j.at("entity_id").get<std::string>();
  e.recorded_at = from_epoch_seconds(j.at("recorded_at").get<std::int64_t>());
  e.payload = j.at("payload");
}

EventLog::EventLog(const std::filesystem::path& dir, bool sync_writes) : dir_(dir), sync_(sync_writes) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot create {}: {}", dir.string(), ec.message()), {dir.string()});

  const auto path = dir / kLogFile;
  const std::string text = read_file(path);
  std::size_t start = 0;
  std::size_t good_bytes = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string::npos) break;  // torn tail
    ++line_no;
    const std::string_view line(text.data() + start, end - start);
    StoredEvent e;
    try {
      e = nlohmann::json::parse(line).get<StoredEvent>();
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kIo, fmt::format("corrupt event log {} line {}: {}", path.string(), line_no, ex.what()),
                  {fmt::format("line={}", line_no)});
    }
    if (e.seq != last_seq_ + 1) {
      throw Error(ErrorCode::kIo, fmt::format("event log {} line {}: sequence {} follows {}", path.string(), line_no,
                                              e.seq, last_seq_),
                  {fmt::format("line={}", line_no)});
    }
    last_seq_ = e.seq;
    recovered_.push_back(std::move(e));
    start = end + 1;
    good_bytes = start;
  }

  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) io_error("cannot open", path);
  if (good_bytes < text.size() && ::ftruncate(fd_, static_cast<off_t>(good_bytes)) != 0) io_error("cannot truncate", path);
}

EventLog::~EventLog() {
  if (fd_ >= 0) {
    if (sync_) ::fsync(fd_);
    ::close(fd_);
  }
}

std::uint64_t EventLog::last_seq() const {
  std::lock_guard lock(mu_);
  return last_seq_;
}

StoredEvent EventLog::append(std::string kind, std::string entity_id, nlohmann::json payload, Timestamp at) {
  std::lock_guard lock(mu_);
  StoredEvent e{last_seq_ + 1, std::move(kind), std::move(entity_id), std::move(payload), at};
  if (fd_ >= 0) {
    const std::string line = nlohmann::json(e).dump() + '\n';
    const auto path = dir_ / kLogFile;
    write_all(fd_, line, path);
    if (sync_ && ::fdatasync(fd_) != 0) io_error("fdatasync", path);
  }
  last_seq_ = e.seq;
  return e;
}

void EventLog::write_snapshot(const Snapshot& snapshot) const {
  if (fd_ < 0) return;
  const auto path = dir_ / kSnapshotFile;
  const auto tmp = dir_ / (std::string(kSnapshotFile) + ".tmp");
  const std::string body = nlohmann::json{{"seq", snapshot.seq}, {"state", snapshot.state}}.dump() + '\n';
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_error("cannot open", tmp);
  write_all(fd, body, tmp);
  if (sync_ && ::fsync(fd) != 0) io_error("fsync", tmp);
  ::close(fd);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot replace {}: {}", path.string(), ec.message()), {path.string()});
}

std::optional<Snapshot> EventLog::read_snapshot() const {
  if (fd_ < 0) return std::nullopt;
  const auto path = dir_ / kSnapshotFile;
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(read_file(path));
    return Snapshot{j.at("seq").get<std::uint64_t>(), j.at("state")};
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kIo, fmt::format("corrupt snapshot {}: {}", path.string(), ex.what()), {path.string()});
  }
}

}  // namespace labgrade::labsvc
