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

#include <span>
#include <string>
#include <utility>

#include <json.hpp>

#include "labgrade/analytics/agreement.hpp"
#include "labgrade/analytics/error_report.hpp"
#include "labgrade/analytics/progress.hpp"

namespace labgrade::analytics {

// Report documents carry {"kind": ..., "schema_version": 1} ahead of their
// fields; key order is fixed so equal reports dump to equal bytes.
inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json to_json(const Correlation& c);
nlohmann::ordered_json to_json(const AgreementReport& r);
nlohmann::ordered_json to_json(const ErrorReport& r);
nlohmann::ordered_json to_json(const ProgressProfile& p);

// CSV series for plotting. Numbers use shortest round-trip formatting; text
// fields are quoted when they contain a comma, quote or newline.
std::string scatter_csv(std::span<const std::pair<double, double>> pairs);  // ai,faculty
std::string error_rows_csv(std::span<const ErrorRow> rows);                  // id,actual,predicted,error,topic
std::string histogram_csv(const ErrorReport& r);                             // bin,count
std::string heatmap_csv(const ProgressProfile& p);                           // week,weekday,count

std::string csv_field(std::string_view text);
std::string format_number(double v);

}  // namespace labgrade::analytics
