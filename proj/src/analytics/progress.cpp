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

#include "labgrade/analytics/progress.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "labgrade/core/errors.hpp"

namespace labgrade::analytics {

ProgressProfile build_progress_profile(const std::string& subject_id, Role role,
                                       std::span<const ProgressEvent> events) {
  for (const auto& e : events) {
    if (e.subject_id != subject_id) {
      throw Error(ErrorCode::kMixedSubjects,
                  fmt::format("event for '{}' in the profile of '{}'", e.subject_id, subject_id), {e.subject_id});
    }
  }
  ProgressProfile p;
  p.subject_id = subject_id;
  p.role = role;
  if (events.empty()) return p;

  // Stable order: timestamp, then kind, then lab id; ties keep input order.
  std::vector<const ProgressEvent*> ordered;
  for (const auto& e : events) ordered.push_back(&e);
  std::stable_sort(ordered.begin(), ordered.end(), [](const ProgressEvent* a, const ProgressEvent* b) {
    if (a->at != b->at) return a->at < b->at;
    if (a->kind != b->kind) return a->kind < b->kind;
    return a->lab_id < b->lab_id;
  });

  const Timestamp first_week = iso_week_start(ordered.front()->at);
  std::set<std::string> assigned, conducted;
  std::map<std::string, SeriesPoint> completed;
  std::map<std::string, std::set<std::string>> labs_per_section;
  for (const ProgressEvent* e : ordered) {
    const auto days = std::chrono::floor<std::chrono::days>(e->at - first_week).count();
    const auto week = static_cast<std::size_t>(days / 7);
    if (p.heatmap.size() <= week) p.heatmap.resize(week + 1, std::array<std::size_t, 7>{});
    ++p.heatmap[week][static_cast<std::size_t>(iso_weekday(e->at) - 1)];

    switch (e->kind) {
      case ProgressEventKind::kAssigned:
        assigned.insert(e->lab_id);
        break;
      case ProgressEventKind::kConducted:
        conducted.insert(e->lab_id);
        labs_per_section[e->section].insert(e->lab_id);
        break;
      case ProgressEventKind::kCompleted:
        if (e->score) completed[e->lab_id] = {e->lab_id, *e->score, e->at};
        break;
    }
  }

  for (const auto& [lab, point] : completed) p.series.push_back(point);
  std::sort(p.series.begin(), p.series.end(), [](const SeriesPoint& a, const SeriesPoint& b) {
    if (a.completed_at != b.completed_at) return a.completed_at < b.completed_at;
    return a.lab_id < b.lab_id;
  });

  std::set<std::string> denominator = role == Role::kFaculty ? conducted : assigned;
  for (const auto& [lab, point] : completed) denominator.insert(lab);
  p.completion_ratio =
      denominator.empty() ? 0.0 : static_cast<double>(completed.size()) / static_cast<double>(denominator.size());

  if (role == Role::kFaculty) {
    for (const auto& [section, labs] : labs_per_section) p.labs_conducted[section] = labs.size();
    if (p.series.size() >= 2) {
      p.mean_class_gain =
          (p.series.back().score - p.series.front().score) / static_cast<double>(p.series.size() - 1);
    }
  }
  return p;
}

}  // namespace labgrade::analytics
