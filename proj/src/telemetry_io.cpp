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

#include "axpue/telemetry_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "axpue/error.hpp"
#include "json_codec.hpp"

namespace axpue {

namespace detail {

void schema_error(const std::string& message) {
  throw Error(ErrorKind::SchemaError, message);
}

const Json& require(const Json& object, std::string_view key) {
  if (!object.is_object()) schema_error("expected a JSON object");
  auto it = object.find(key);
  if (it == object.end()) schema_error("missing key '" + std::string(key) + "'");
  return *it;
}

std::string require_string(const Json& object, std::string_view key) {
  const auto& value = require(object, key);
  if (!value.is_string()) schema_error("'" + std::string(key) + "' must be a string");
  return value.get<std::string>();
}

double require_number(const Json& object, std::string_view key) {
  const auto& value = require(object, key);
  if (!value.is_number()) schema_error("'" + std::string(key) + "' must be a number");
  return value.get<double>();
}

double require_time(const Json& object, std::string_view key) {
  const auto& value = require(object, key);
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    if (auto t = parse_rfc3339(value.get_ref<const std::string&>())) return *t;
  }
  schema_error("'" + std::string(key) +
               "' must be epoch seconds or an RFC 3339 timestamp");
}

std::uint64_t require_count(const Json& value, std::string_view what) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  if (value.is_number_float()) {
    const double v = value.get<double>();
    // Large counters written by other tools often arrive as 1.8e14.
    if (v >= 0.0 && v < 18446744073709551616.0 && std::floor(v) == v) {
      return static_cast<std::uint64_t>(v);
    }
  }
  schema_error(std::string(what) + " must be a non-negative integer");
}

Json run_to_json(const ApplicationRun& run) {
  Json devices = Json::array();
  for (const auto& id : run.attributed_devices) devices.push_back(id);
  return Json{
      {"run_id", run.run_id},
      {"category", std::string(to_string(run.category))},
      {"start", run.start},
      {"end", run.end},
      {"work",
       {{"type", std::string(work_type_name(run.work))},
        {"value", work_count(run.work)}}},
      {"devices", std::move(devices)},
  };
}

ApplicationRun run_from_json(const Json& object) {
  if (!object.is_object()) schema_error("run must be a JSON object");
  ApplicationRun run;
  run.run_id = require_string(object, "run_id");
  if (run.run_id.empty()) schema_error("run_id must not be empty");

  const auto category_text = require_string(object, "category");
  auto category = parse_application_category(category_text);
  if (!category) schema_error("unknown application category '" + category_text + "'");
  run.category = *category;

  run.start = require_time(object, "start");
  run.end = require_time(object, "end");

  const auto& work = require(object, "work");
  const auto type = require_string(work, "type");
  auto measure = make_work(type, require_count(require(work, "value"), "work.value"));
  if (!measure) schema_error("unknown work type '" + type + "'");
  if (!work_matches(run.category, *measure)) {
    schema_error("work type '" + type + "' does not match category '" +
                 category_text + "'");
  }
  run.work = *measure;

  const auto& devices = require(object, "devices");
  if (!devices.is_array() || devices.empty()) {
    schema_error("'devices' must be a non-empty array of device ids");
  }
  for (const auto& id : devices) {
    if (!id.is_string() || id.get_ref<const std::string&>().empty()) {
      schema_error("device ids must be non-empty strings");
    }
    run.attributed_devices.insert(id.get<std::string>());
  }
  return run;
}

Json device_to_json(const DeviceRecord& device) {
  return Json{{"id", device.device_id},
              {"category", std::string(to_string(device.category))},
              {"label", device.label}};
}

DeviceRecord device_from_json(const Json& object) {
  DeviceRecord device;
  device.device_id = require_string(object, "id");
  const auto category_text = require_string(object, "category");
  auto category = parse_device_category(category_text);
  if (!category) schema_error("unknown device category '" + category_text + "'");
  device.category = *category;
  if (auto it = object.find("label"); it != object.end()) {
    if (!it->is_string()) schema_error("'label' must be a string");
    device.label = it->get<std::string>();
  }
  return device;
}

}  // namespace detail

using detail::Json;

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    fields.push_back(trim(line.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return fields;
}

std::optional<int> parse_digits(std::string_view text, std::size_t pos,
                                std::size_t count) {
  if (pos + count > text.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_trimmed(double value, int decimals) {
  auto text = format_fixed(value, decimals);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  return text;
}

}  // namespace

std::optional<double> parse_rfc3339(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)
  const auto year = parse_digits(text, 0, 4);
  const auto month = parse_digits(text, 5, 2);
  const auto day = parse_digits(text, 8, 2);
  const auto hour = parse_digits(text, 11, 2);
  const auto minute = parse_digits(text, 14, 2);
  const auto second = parse_digits(text, 17, 2);
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;
  if (*hour > 23 || *minute > 59 || *second > 60) return std::nullopt;

  using namespace std::chrono;
  const year_month_day date{std::chrono::year{*year},
                            std::chrono::month{static_cast<unsigned>(*month)},
                            std::chrono::day{static_cast<unsigned>(*day)}};
  if (!date.ok()) return std::nullopt;

  std::size_t pos = 19;
  double fraction = 0.0;
  if (pos < text.size() && text[pos] == '.') {
    const auto frac_begin = pos;
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == frac_begin + 1) return std::nullopt;
    auto parsed = parse_double(std::string("0") +
                               std::string(text.substr(frac_begin, pos - frac_begin)));
    if (!parsed) return std::nullopt;
    fraction = *parsed;
  }

  int offset_seconds = 0;
  if (pos >= text.size()) return std::nullopt;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const auto off_hour = parse_digits(text, pos + 1, 2);
    const auto off_minute = parse_digits(text, pos + 4, 2);
    if (!off_hour || !off_minute || text[pos + 3] != ':') return std::nullopt;
    offset_seconds = (*off_hour * 60 + *off_minute) * 60;
    if (text[pos] == '-') offset_seconds = -offset_seconds;
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;

  const auto days = sys_days(date).time_since_epoch().count();
  const auto whole = static_cast<std::int64_t>(days) * 86400 + *hour * 3600 +
                     *minute * 60 + *second - offset_seconds;
  return static_cast<double>(whole) + fraction;
}

std::vector<PowerTrace> parse_power_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::ParseError, "missing header `device_id,timestamp,watts`", 1);
  }
  ++line_no;
  {
    auto header = split(trim(line), ',');
    // Tolerate a UTF-8 byte order mark.
    if (!header.empty() && header[0].substr(0, 3) == "\xEF\xBB\xBF") {
      header[0].remove_prefix(3);
    }
    if (header.size() != 3 || header[0] != "device_id" ||
        header[1] != "timestamp" || header[2] != "watts") {
      throw Error(ErrorKind::ParseError,
                  "expected header `device_id,timestamp,watts`", line_no);
    }
  }

  struct Row {
    PowerTrace::Point point;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text, ',');
    if (fields.size() != 3) {
      throw Error(ErrorKind::ParseError, "expected 3 fields", line_no);
    }
    if (fields[0].empty()) {
      throw Error(ErrorKind::ParseError, "empty device_id", line_no);
    }
    auto timestamp = parse_double(fields[1]);
    if (!timestamp) timestamp = parse_rfc3339(fields[1]);
    if (!timestamp || !std::isfinite(*timestamp)) {
      throw Error(ErrorKind::ParseError,
                  "bad timestamp '" + std::string(fields[1]) + "'", line_no);
    }
    const auto watts = parse_double(fields[2]);
    if (!watts || !std::isfinite(*watts)) {
      throw Error(ErrorKind::ParseError,
                  "bad power value '" + std::string(fields[2]) + "'", line_no);
    }
    if (*watts < 0.0) {
      throw Error(ErrorKind::InvalidPower, "negative power", line_no,
                  std::string(fields[0]));
    }
    rows[std::string(fields[0])].push_back({{*timestamp, *watts}, line_no});
  }

  std::vector<PowerTrace> traces;
  for (auto& [device, device_rows] : rows) {
    std::stable_sort(device_rows.begin(), device_rows.end(),
                     [](const Row& a, const Row& b) {
                       return a.point.timestamp < b.point.timestamp;
                     });
    std::vector<PowerTrace::Point> points;
    points.reserve(device_rows.size());
    for (std::size_t i = 0; i < device_rows.size(); ++i) {
      if (i > 0 && device_rows[i].point.timestamp ==
                       device_rows[i - 1].point.timestamp) {
        throw Error(ErrorKind::DuplicateSample, "repeated timestamp",
                    std::max(device_rows[i].line, device_rows[i - 1].line),
                    device);
      }
      points.push_back(device_rows[i].point);
    }
    traces.emplace_back(device, std::move(points));
  }
  return traces;
}

std::string write_power_csv(std::span<const PowerTrace> traces) {
  std::string out = "device_id,timestamp,watts\n";
  for (const auto& trace : traces) {
    const auto id = csv_field(trace.device_id());
    for (const auto& point : trace.points()) {
      out += id;
      out += ',';
      out += format_exact(point.timestamp);
      out += ',';
      out += format_exact(point.watts);
      out += '\n';
    }
  }
  return out;
}

std::vector<ApplicationRun> parse_runs_jsonl(std::istream& in) {
  std::vector<ApplicationRun> runs;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ApplicationRun run;
    try {
      run = detail::run_from_json(Json::parse(line));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what(),
                  line_no);
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail(), line_no, e.device_id());
    }
    if (!(run.end > run.start)) {
      throw Error(ErrorKind::InvalidWindow,
                  "run '" + run.run_id + "' must satisfy end > start", line_no);
    }
    if (!ids.insert(run.run_id).second) {
      throw Error(ErrorKind::SchemaError,
                  "duplicate run_id '" + run.run_id + "'", line_no);
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string write_runs_jsonl(std::span<const ApplicationRun> runs) {
  std::string out;
  for (const auto& run : runs) {
    out += detail::run_to_json(run).dump();
    out += '\n';
  }
  return out;
}

Inventory parse_inventory_json(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  const auto& list = detail::require(doc, "devices");
  if (!list.is_array()) detail::schema_error("'devices' must be an array");
  std::vector<DeviceRecord> devices;
  for (const auto& item : list) devices.push_back(detail::device_from_json(item));
  return validate_inventory(std::move(devices));
}

std::string write_inventory_json(const Inventory& inventory) {
  Json list = Json::array();
  for (const auto& device : inventory.devices()) {
    list.push_back(detail::device_to_json(device));
  }
  return Json{{"devices", std::move(list)}}.dump(2) + "\n";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string format_appue(double value) {
  const double magnitude = std::abs(value);
  return format_fixed(value, magnitude >= 1.0 && magnitude < 100.0 ? 4 : 3);
}

std::string format_exact(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

namespace {

constexpr std::string_view kReportSchema = "axpue.report.v1";

Json optional_number(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::optional<double> read_optional_number(const Json& object, std::string_view key) {
  const auto& value = detail::require(object, key);
  if (value.is_null()) return std::nullopt;
  if (!value.is_number()) {
    detail::schema_error("'" + std::string(key) + "' must be a number or null");
  }
  return value.get<double>();
}

std::string efficiency_unit_label(PerformanceUnit unit) {
  return std::string(unit_label(unit)) + " per kW";
}

Json report_to_json(const MetricsReport& report) {
  Json energies = Json::object();
  for (auto category : kAllDeviceCategories) {
    energies[std::string(to_string(category))] = report.window.energy(category);
  }
  Json runs = Json::array();
  for (const auto& row : report.rows) {
    runs.push_back(Json{
        {"run_id", row.run_id},
        {"category", std::string(to_string(row.category))},
        {"start", row.start},
        {"end", row.end},
        {"devices", row.devices},
        {"it_energy_j", row.it_energy_j},
        {"it_power_kw", row.it_power_kw},
        {"facility_power_kw", row.facility_power_kw},
        {"pue", row.pue},
        {"performance",
         {{"value", row.performance.value},
          {"unit", std::string(to_string(row.performance.unit))}}},
        {"efficiency_unit", efficiency_unit_label(row.performance.unit)},
        {"appue", row.appue},
        {"aopue", row.aopue},
        {"weight", row.weight},
    });
  }
  return Json{
      {"schema", kReportSchema},
      {"window",
       {{"start", report.window.start()},
        {"end", report.window.end()},
        {"energy_j", std::move(energies)},
        {"it_energy_j", report.window.it_energy()},
        {"total_facility_energy_j", report.window.total_facility_energy()}}},
      {"pue", report.pue},
      {"runs", std::move(runs)},
      {"weighted_appue", optional_number(report.weighted_appue)},
      {"aggregated_aopue", optional_number(report.aggregated_aopue)},
      {"provenance",
       {{"integration", report.provenance.integration},
        {"bytes_per_kb", report.provenance.bytes_per_kb},
        {"max_gap_s", optional_number(report.provenance.max_gap_s)}}},
      {"warnings", report.warnings},
  };
}

MetricsReport report_from_json(const Json& doc) {
  using namespace detail;
  if (require_string(doc, "schema") != kReportSchema) {
    schema_error("unsupported report schema (expected " + std::string(kReportSchema) + ")");
  }
  const auto& window_json = require(doc, "window");
  const auto& energy_json = require(window_json, "energy_j");
  EnergyWindow::Energies energies{};
  for (auto category : kAllDeviceCategories) {
    energies[static_cast<std::size_t>(category)] =
        require_number(energy_json, to_string(category));
  }
  EnergyWindow window(require_number(window_json, "start"),
                      require_number(window_json, "end"), energies);
  if (window.total_facility_energy() !=
          require_number(window_json, "total_facility_energy_j") ||
      window.it_energy() != require_number(window_json, "it_energy_j")) {
    schema_error("window totals do not match the category energies");
  }

  MetricsReport report{.window = window, .pue = require_number(doc, "pue")};
  const auto& runs = require(doc, "runs");
  if (!runs.is_array()) schema_error("'runs' must be an array");
  for (const auto& item : runs) {
    ReportRow row;
    row.run_id = require_string(item, "run_id");
    const auto category_text = require_string(item, "category");
    auto category = parse_application_category(category_text);
    if (!category) schema_error("unknown application category '" + category_text + "'");
    row.category = *category;
    row.start = require_number(item, "start");
    row.end = require_number(item, "end");
    const auto& devices = require(item, "devices");
    if (!devices.is_array()) schema_error("'devices' must be an array");
    for (const auto& id : devices) {
      if (!id.is_string()) schema_error("device ids must be strings");
      row.devices.push_back(id.get<std::string>());
    }
    row.it_energy_j = require_number(item, "it_energy_j");
    row.it_power_kw = require_number(item, "it_power_kw");
    row.facility_power_kw = require_number(item, "facility_power_kw");
    row.pue = require_number(item, "pue");
    const auto& performance = require(item, "performance");
    row.performance.value = require_number(performance, "value");
    const auto unit_text = require_string(performance, "unit");
    auto unit = parse_performance_unit(unit_text);
    if (!unit) schema_error("unknown performance unit '" + unit_text + "'");
    row.performance.unit = *unit;
    row.appue = require_number(item, "appue");
    row.aopue = require_number(item, "aopue");
    row.weight = require_number(item, "weight");
    report.rows.push_back(std::move(row));
  }
  report.weighted_appue = read_optional_number(doc, "weighted_appue");
  report.aggregated_aopue = read_optional_number(doc, "aggregated_aopue");

  const auto& provenance = require(doc, "provenance");
  report.provenance.integration = require_string(provenance, "integration");
  report.provenance.bytes_per_kb = require_number(provenance, "bytes_per_kb");
  report.provenance.max_gap_s = read_optional_number(provenance, "max_gap_s");

  const auto& warnings = require(doc, "warnings");
  if (!warnings.is_array()) schema_error("'warnings' must be an array");
  for (const auto& warning : warnings) {
    if (!warning.is_string()) schema_error("warnings must be strings");
    report.warnings.push_back(warning.get<std::string>());
  }
  return report;
}

}  // namespace

std::string write_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(report).dump(2) + "\n";
  return write_report_table(std::span(&report, 1));
}

MetricsReport parse_report_json(std::string_view text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid report JSON: ") + e.what());
  }
}

std::string write_report_table(std::span<const MetricsReport> reports,
                               std::vector<std::string>* warnings) {
  std::string out =
      "workload,it_power_kw,total_facility_power_kw,performance,pue,appue,aopue\n";
  double it_energy = 0.0;
  double total_energy = 0.0;
  double duration = 0.0;
  std::vector<double> powers;
  std::vector<Efficiency> appues;
  for (const auto& report : reports) {
    it_energy += report.window.it_energy();
    total_energy += report.window.total_facility_energy();
    duration += report.window.duration();
    for (const auto& row : report.rows) {
      out += csv_field(row.run_id);
      out += ',' + format_fixed(row.it_power_kw, 3);
      out += ',' + format_fixed(row.facility_power_kw, 3);
      out += ',' + format_trimmed(row.performance.value, 3) + ' ' +
             std::string(unit_label(row.performance.unit));
      out += ',' + format_fixed(row.pue, 3);
      out += ',' + format_appue(row.appue);
      out += ',' + format_fixed(row.aopue, 3);
      out += '\n';
      powers.push_back(row.it_power_kw);
      appues.push_back({row.appue, row.performance.unit});
    }
  }

  out += "(aggregate)";
  if (reports.empty()) {
    out += ",,,,,,\n";
    return out;
  }
  const double pue = total_energy / it_energy;
  out += ',' + format_fixed(it_energy / duration / 1000.0, 3);
  out += ',' + format_fixed(total_energy / duration / 1000.0, 3);
  out += ",," + format_fixed(pue, 3);

  const bool mixed = std::any_of(appues.begin(), appues.end(), [&](const Efficiency& e) {
    return e.unit != appues.front().unit;
  });
  if (appues.empty() || mixed) {
    if (mixed && warnings != nullptr) {
      warnings->push_back(
          "rows mix performance units; aggregate ApPUE/AoPUE columns left blank");
    }
    out += ",,\n";
    return out;
  }
  const double weighted = aggregate_appue(appues, compute_weights(powers)).value;
  out += ',' + format_appue(weighted);
  out += ',' + format_fixed(weighted / pue, 3);
  out += '\n';
  return out;
}

std::string write_report_series(std::span<const MetricsReport> reports) {
  std::string out = "workload,metric,value\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      const auto id = csv_field(row.run_id);
      const std::pair<const char*, double> cells[] = {
          {"it_power_kw", row.it_power_kw},
          {"total_facility_power_kw", row.facility_power_kw},
          {"performance", row.performance.value},
          {"pue", row.pue},
          {"appue", row.appue},
          {"aopue", row.aopue},
      };
      for (const auto& [metric, value] : cells) {
        out += id + ',' + metric + ',' + format_exact(value) + '\n';
      }
    }
  }
  return out;
}

ScenarioFile load_scenario_file(const std::filesystem::path& manifest,
                                double max_gap) {
  std::ifstream in(manifest);
  if (!in) {
    throw Error(ErrorKind::SchemaError, "cannot open manifest " + manifest.string());
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid manifest JSON: ") + e.what());
  }
  const auto base = manifest.parent_path();
  auto open = [&](const std::string& relative) {
    std::ifstream file(base / relative);
    if (!file) {
      throw Error(ErrorKind::SchemaError,
                  "cannot open " + (base / relative).string());
    }
    return file;
  };

  ScenarioFile scenario;
  const auto& inventory = detail::require(doc, "inventory");
  if (inventory.is_string()) {
    auto file = open(inventory.get<std::string>());
    scenario.inventory = parse_inventory_json(file);
  } else {
    std::istringstream text(inventory.dump());
    scenario.inventory = parse_inventory_json(text);
  }
  {
    auto file = open(detail::require_string(doc, "power"));
    scenario.traces = parse_power_csv(file);
  }
  {
    auto file = open(detail::require_string(doc, "runs"));
    scenario.runs = parse_runs_jsonl(file);
  }
  if (auto it = doc.find("window"); it != doc.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
        !(*it)[1].is_number()) {
      detail::schema_error("'window' must be [start, end]");
    }
    scenario.window = std::make_pair((*it)[0].get<double>(), (*it)[1].get<double>());
  }

  for (const auto& run : scenario.runs) {
    validate_run(run, scenario.inventory);
    category_energy(scenario.traces, scenario.inventory, run.start, run.end, max_gap);
  }
  return scenario;
}

}  // namespace axpue
