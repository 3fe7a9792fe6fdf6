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

#include "labgrade/analytics/export.hpp"

#include <fmt/format.h>

namespace labgrade::analytics {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json header(std::string_view kind) {
  ordered_json j;
  j["kind"] = kind;
  j["schema_version"] = kReportSchemaVersion;
  return j;
}

ordered_json matrix_json(const BandMatrix& m) {
  auto j = ordered_json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

}  // namespace

std::string format_number(double v) { return ordered_json(v).dump(); }

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json to_json(const Correlation& c) {
  ordered_json j;
  j["value"] = c.value;
  j["zero_variance"] = c.zero_variance;
  return j;
}

ordered_json to_json(const AgreementReport& r) {
  auto j = header("agreement_report");
  j["n_pairs"] = r.n_pairs;
  j["pearson_r"] = to_json(r.pearson);
  j["spearman_rho"] = to_json(r.spearman);
  j["cohen_kappa"] = r.cohen_kappa;
  j["observed_agreement"] = r.observed_agreement;
  j["expected_agreement"] = r.expected_agreement;
  j["band_edges"] = kBandEdges;
  j["band_confusion"] = matrix_json(r.band_confusion);
  return j;
}

ordered_json to_json(const ErrorReport& r) {
  auto j = header("error_report");
  j["n"] = r.n;
  j["bin_min"] = kErrorBinMin;
  j["bin_max"] = kErrorBinMax;
  j["histogram"] = r.histogram;
  j["underflow"] = r.underflow;
  j["overflow"] = r.overflow;
  j["mean_error"] = r.mean_error;
  j["share_within_5"] = r.share_within_5;
  auto worst = ordered_json::array();
  for (const auto& w : r.worst) {
    ordered_json e;
    e["id"] = w.id;
    e["actual"] = w.actual;
    e["predicted"] = w.predicted;
    e["deviation"] = w.deviation;
    e["topic_tag"] = w.topic_tag;
    worst.push_back(std::move(e));
  }
  j["worst"] = std::move(worst);
  return j;
}

ordered_json to_json(const ProgressProfile& p) {
  auto j = header("progress_profile");
  j["subject_id"] = p.subject_id;
  j["role"] = to_string(p.role);
  auto series = ordered_json::array();
  for (const auto& s : p.series) {
    ordered_json e;
    e["lab_id"] = s.lab_id;
    e["score"] = s.score;
    e["completed_at"] = to_epoch_seconds(s.completed_at);
    series.push_back(std::move(e));
  }
  j["series"] = std::move(series);
  auto heat = ordered_json::array();
  for (const auto& week : p.heatmap) heat.push_back(week);
  j["heatmap"] = std::move(heat);
  j["completion_ratio"] = p.completion_ratio;
  if (p.role == Role::kFaculty) {
    j["labs_conducted"] = p.labs_conducted;
    j["mean_class_gain"] = p.mean_class_gain ? ordered_json(*p.mean_class_gain) : ordered_json(nullptr);
  }
  return j;
}

std::string scatter_csv(std::span<const std::pair<double, double>> pairs) {
  std::string out = "ai,faculty\n";
  for (const auto& [a, f] : pairs) out += format_number(a) + "," + format_number(f) + "\n";
  return out;
}

std::string error_rows_csv(std::span<const ErrorRow> rows) {
  std::string out = "id,actual,predicted,error,topic\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", csv_field(r.id), format_number(r.actual), format_number(r.predicted),
                       format_number(r.predicted - r.actual), csv_field(r.topic_tag));
  }
  return out;
}

std::string histogram_csv(const ErrorReport& r) {
  std::string out = "bin,count\n";
  out += fmt::format("underflow,{}\n", r.underflow);
  for (std::size_t i = 0; i < kErrorBinCount; ++i) {
    out += fmt::format("{},{}\n", kErrorBinMin + static_cast<int>(i), r.histogram[i]);
  }
  out += fmt::format("overflow,{}\n", r.overflow);
  return out;
}

std::string heatmap_csv(const ProgressProfile& p) {
  std::string out = "week,weekday,count\n";
  for (std::size_t w = 0; w < p.heatmap.size(); ++w) {
    for (std::size_t d = 0; d < 7; ++d) out += fmt::format("{},{},{}\n", w, d + 1, p.heatmap[w][d]);
  }
  return out;
}

}  // namespace labgrade::analytics
