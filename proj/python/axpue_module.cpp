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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "axpue/energy.hpp"
#include "axpue/error.hpp"
#include "axpue/metrics.hpp"
#include "axpue/performance.hpp"
#include "axpue/simulator.hpp"
#include "axpue/telemetry_io.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;

namespace {

axpue::PerformanceUnit unit_from(const std::string& text) {
  auto unit = axpue::parse_performance_unit(text);
  if (!unit) throw axpue::Error(axpue::ErrorKind::SchemaError, "unknown unit '" + text + "'");
  return *unit;
}

axpue::PowerTrace make_trace(const std::vector<double>& timestamps,
                             const std::vector<double>& watts,
                             const std::string& device_id) {
  if (timestamps.size() != watts.size()) {
    throw axpue::Error(axpue::ErrorKind::ShapeMismatch,
                       "timestamps and watts must have the same length");
  }
  std::vector<axpue::PowerTrace::Point> points;
  points.reserve(timestamps.size());
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    points.push_back({timestamps[i], watts[i]});
  }
  return axpue::PowerTrace(device_id, std::move(points));
}

double pue_from_energies(const std::map<std::string, double>& energy_j) {
  axpue::EnergyWindow::Energies energies{};
  for (const auto& [name, joules] : energy_j) {
    auto category = axpue::parse_device_category(name);
    if (!category) {
      throw axpue::Error(axpue::ErrorKind::SchemaError,
                         "unknown device category '" + name + "'");
    }
    energies[static_cast<std::size_t>(*category)] = joules;
  }
  return axpue::compute_pue(axpue::EnergyWindow(0.0, 1.0, energies));
}

std::string compute_report_text(const std::string& power_csv,
                                const std::string& runs_jsonl,
                                const std::string& inventory_json,
                                std::optional<std::pair<double, double>> window,
                                double max_gap, const std::string& format) {
  auto report_format = axpue::parse_report_format(format);
  if (!report_format) {
    throw axpue::Error(axpue::ErrorKind::SchemaError, "format must be json or csv");
  }
  std::istringstream power(power_csv);
  std::istringstream runs(runs_jsonl);
  std::istringstream inventory(inventory_json);
  const auto traces = axpue::parse_power_csv(power);
  const auto parsed_runs = axpue::parse_runs_jsonl(runs);
  const auto parsed_inventory = axpue::parse_inventory_json(inventory);
  const auto report = axpue::compute_report(traces, parsed_inventory, parsed_runs,
                                            {.window = window, .max_gap = max_gap});
  return axpue::write_report(report, *report_format);
}

py::dict simulate_named(const std::string& name, std::optional<std::uint64_t> seed) {
  auto scenario = axpue::builtin_scenario(name);
  if (!scenario) scenario = axpue::parse_scenario_json(name);
  if (seed) scenario->seed = *seed;
  const auto output = axpue::simulate(*scenario);
  py::dict result;
  result["power_csv"] = output.power_csv;
  result["runs_jsonl"] = output.runs_jsonl;
  result["inventory_json"] = output.inventory_json;
  result["manifest_json"] = output.manifest_json;
  return result;
}

std::string report_table(const std::vector<std::string>& report_json) {
  std::vector<axpue::MetricsReport> reports;
  for (const auto& text : report_json) reports.push_back(axpue::parse_report_json(text));
  return axpue::write_report_table(reports);
}

py::list paper_rows() {
  py::list rows;
  for (const auto& row : axpue::paper_table()) {
    py::dict entry;
    entry["workload"] = row.workload;
    entry["it_power_kw"] = row.it_power_kw;
    entry["total_facility_power_kw"] = row.total_facility_power_kw;
    entry["performance"] = row.performance;
    entry["pue"] = row.pue;
    entry["appue"] = row.appue;
    entry["aopue"] = row.aopue;
    rows.append(std::move(entry));
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PUE and application-level efficiency metrics (ApPUE, AoPUE)";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() {
    return py::object(py::exception<axpue::Error>(m, "AxpueError", PyExc_ValueError));
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const axpue::Error& e) {
      const auto& type = error_type.get_stored();
      py::object instance = type(e.what());
      instance.attr("kind") = std::string(axpue::to_string(e.kind()));
      instance.attr("line") = e.line() ? py::cast(*e.line()) : py::none();
      instance.attr("device_id") = e.device_id() ? py::cast(*e.device_id()) : py::none();
      PyErr_SetObject(type.ptr(), instance.ptr());
    }
  });

  m.def(
      "integrate_power",
      [](const std::vector<double>& timestamps, const std::vector<double>& watts,
         double start, double end, double max_gap) {
        return axpue::integrate_power(make_trace(timestamps, watts, "trace"), start, end,
                                      max_gap);
      },
      py::arg("timestamps"), py::arg("watts"), py::arg("start"), py::arg("end"),
      py::arg("max_gap") = 60.0,
      "Trapezoidal energy in joules of a power trace over [start, end].");
  m.def("average_power", &axpue::average_power, py::arg("energy"), py::arg("start"),
        py::arg("end"));
  m.def("compute_pue", &pue_from_energies, py::arg("energy_j"),
        "PUE from a {category: joules} mapping.");
  m.def(
      "compute_appue",
      [](double performance, double it_power_kw, const std::string& unit) {
        return axpue::compute_appue({performance, unit_from(unit)}, it_power_kw).value;
      },
      py::arg("performance"), py::arg("it_power_kw"), py::arg("unit") = "kb_per_s");
  m.def(
      "compute_aopue",
      [](double performance, double facility_power_kw, const std::string& unit) {
        return axpue::compute_aopue({performance, unit_from(unit)}, facility_power_kw)
            .value;
      },
      py::arg("performance"), py::arg("total_facility_power_kw"),
      py::arg("unit") = "kb_per_s");
  m.def(
      "compute_weights",
      [](const std::vector<double>& powers) { return axpue::compute_weights(powers); },
      py::arg("it_power_kw"));
  m.def(
      "aggregate_appue",
      [](const std::vector<double>& appues, const std::vector<double>& weights) {
        std::vector<axpue::Efficiency> values;
        for (double v : appues) values.push_back({v, axpue::PerformanceUnit::KBPerSecond});
        return axpue::aggregate_appue(values, weights).value;
      },
      py::arg("appues"), py::arg("weights"));
  m.def("verify_identity", &axpue::verify_identity, py::arg("appue"), py::arg("pue"),
        py::arg("aopue"));
  m.def("compute_report", &compute_report_text, py::arg("power_csv"),
        py::arg("runs_jsonl"), py::arg("inventory_json"), py::arg("window") = py::none(),
        py::arg("max_gap") = 60.0, py::arg("format") = "json",
        "Run the full pipeline over in-memory file contents; returns the report text.");
  m.def("simulate", &simulate_named, py::arg("scenario"), py::arg("seed") = py::none(),
        "Simulate a built-in scenario name or a scenario manifest JSON string.");
  m.def("builtin_scenarios", &axpue::builtin_scenario_names);
  m.def("report_table", &report_table, py::arg("reports"));
  m.def("paper_table", &paper_rows);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
