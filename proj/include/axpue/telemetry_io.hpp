// Copyright 2026 The axpue Authors.
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

// File formats:
//
//   power CSV      header `device_id,timestamp,watts`; timestamp is epoch
//                  seconds or an RFC 3339 string.
//   runs JSONL     one object per line:
//                  {"run_id","category","start","end",
//                   "work":{"type","value"},"devices":[...]}
//   inventory JSON {"devices":[{"id","category","label"}]}
//   report JSON    see write_report; keys are emitted in sorted order.
//   report CSV     workload,it_power_kw,total_facility_power_kw,performance,
//                  pue,appue,aopue  plus one "(aggregate)" summary row.

#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axpue/energy.hpp"
#include "axpue/metrics.hpp"
#include "axpue/model.hpp"

namespace axpue {

/// Rows are grouped per device (traces sorted by device id) and sorted by
/// time. Errors carry the 1-based line number: ParseError, InvalidPower,
/// DuplicateSample.
std::vector<PowerTrace> parse_power_csv(std::istream& in);
std::string write_power_csv(std::span<const PowerTrace> traces);

/// Parses "2024-05-01T12:00:00Z" / "...T12:00:00.25+02:00" into epoch
/// seconds. Returns nullopt when the text is not RFC 3339.
std::optional<double> parse_rfc3339(std::string_view text);

/// Errors: SchemaError(line), InvalidWindow(line).
std::vector<ApplicationRun> parse_runs_jsonl(std::istream& in);
std::string write_runs_jsonl(std::span<const ApplicationRun> runs);

/// Errors: SchemaError, DuplicateDevice, InvalidDevice.
Inventory parse_inventory_json(std::istream& in);
std::string write_inventory_json(const Inventory& inventory);

enum class ReportFormat { Json, Csv };

std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Deterministic serialization; identical reports give identical bytes.
std::string write_report(const MetricsReport& report, ReportFormat format);

/// Inverse of write_report(..., Json). Errors: SchemaError.
MetricsReport parse_report_json(std::string_view text);

/// Merged table over several reports: every row of every report, then one
/// "(aggregate)" row weighting all rows together. The aggregate cells are
/// blank when units differ; `warnings` (if given) receives a note.
std::string write_report_table(std::span<const MetricsReport> reports,
                               std::vector<std::string>* warnings = nullptr);

/// Long-format `workload,metric,value` series for plotting.
std::string write_report_series(std::span<const MetricsReport> reports);

/// Display formatting used by the CSV writers.
std::string format_fixed(double value, int decimals);
std::string format_appue(double value);
/// Shortest decimal text that parses back to the same double.
std::string format_exact(double value);

/// A scenario manifest tying an inventory to telemetry and run files.
struct ScenarioFile {
  Inventory inventory;
  std::vector<PowerTrace> traces;
  std::vector<ApplicationRun> runs;
  std::optional<std::pair<double, double>> window;
};

/// Reads a manifest of the form
///   {"inventory": "inventory.json" | {"devices": [...]},
///    "power": "power.csv", "runs": "runs.jsonl", "window": [a, b]?}
/// with paths relative to the manifest. Every run must reference inventory
/// IT devices and lie within telemetry coverage at `max_gap`.
ScenarioFile load_scenario_file(const std::filesystem::path& manifest,
                                double max_gap);

}  // namespace axpue
