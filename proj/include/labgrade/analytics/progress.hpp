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

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labgrade/core/time.hpp"
#include "labgrade/core/types.hpp"

namespace labgrade::analytics {

enum class ProgressEventKind {
  kAssigned,   // a lab was allocated to the student
  kCompleted,  // student: final score for a lab; faculty: class mean for a lab
  kConducted,  // faculty: a lab was run for a section
};

struct ProgressEvent {
  std::string subject_id;
  ProgressEventKind kind = ProgressEventKind::kAssigned;
  std::string lab_id;
  std::string section;
  std::optional<double> score;
  Timestamp at{};
};

struct SeriesPoint {
  std::string lab_id;
  double score = 0.0;
  Timestamp completed_at{};

  bool operator==(const SeriesPoint&) const = default;
};

struct ProgressProfile {
  std::string subject_id;
  Role role = Role::kStudent;
  // One point per completed lab (latest completion wins), ordered by
  // (completed_at, lab_id).
  std::vector<SeriesPoint> series;
  // heatmap[w][d]: events in week w (0 = ISO week of the earliest event) on
  // ISO weekday d + 1.
  std::vector<std::array<std::size_t, 7>> heatmap;
  // Completed labs over labs assigned (student) or conducted (faculty).
  double completion_ratio = 0.0;
  std::map<std::string, std::size_t> labs_conducted;  // faculty: per section
  std::optional<double> mean_class_gain;              // faculty: (last - first) / (n - 1)
};

// Deterministic fold over the events in timestamp order. Throws
// Error(kMixedSubjects) if any event names another subject.
ProgressProfile build_progress_profile(const std::string& subject_id, Role role,
                                       std::span<const ProgressEvent> events);

}  // namespace labgrade::analytics
