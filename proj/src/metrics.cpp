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

#include "axpue/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "axpue/error.hpp"

namespace axpue {

double compute_pue(const EnergyWindow& window) {
  if (!(window.it_energy() > 0.0)) {
    throw Error(ErrorKind::ZeroITEnergy,
                "IT equipment energy is zero over the window; PUE is undefined");
  }
  return window.total_facility_energy() / window.it_energy();
}

Efficiency compute_appue(const PerformanceRate& performance, double it_power_kw) {
  if (!(it_power_kw > 0.0) || !std::isfinite(it_power_kw)) {
    throw Error(ErrorKind::ZeroITPower,
                "IT equipment power must be positive to compute ApPUE");
  }
  return {performance.value / it_power_kw, performance.unit};
}

Efficiency compute_aopue(const PerformanceRate& performance,
                         double total_facility_power_kw) {
  if (!(total_facility_power_kw > 0.0) || !std::isfinite(total_facility_power_kw)) {
    throw Error(ErrorKind::ZeroFacilityPower,
                "total facility power must be positive to compute AoPUE");
  }
  return {performance.value / total_facility_power_kw, performance.unit};
}

std::vector<double> compute_weights(std::span<const double> it_power_kw) {
  if (it_power_kw.empty()) {
    throw Error(ErrorKind::NoRuns, "cannot weight an empty set of runs");
  }
  double sum = 0.0;
  for (double power : it_power_kw) {
    if (!std::isfinite(power) || power < 0.0) {
      throw Error(ErrorKind::InvalidSample,
                  "per-run IT power must be finite and non-negative");
    }
    sum += power;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::ZeroITPower, "all runs report zero IT power");
  }
  std::vector<double> weights;
  weights.reserve(it_power_kw.size());
  for (double power : it_power_kw) weights.push_back(power / sum);
  return weights;
}

Efficiency aggregate_appue(std::span<const Efficiency> appues,
                           std::span<const double> weights) {
  if (appues.size() != weights.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "got " + std::to_string(appues.size()) + " ApPUE values but " +
                    std::to_string(weights.size()) + " weights");
  }
  if (appues.empty()) {
    throw Error(ErrorKind::NoRuns, "cannot aggregate an empty set of runs");
  }
  const PerformanceUnit unit = appues.front().unit;
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < appues.size(); ++i) {
    if (appues[i].unit != unit) {
      throw Error(ErrorKind::UnitMismatch,
                  "ApPUE values mix " + std::string(unit_label(unit)) + " and " +
                      std::string(unit_label(appues[i].unit)) +
                      " performance units");
    }
    weight_sum += weights[i];
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidSample, "weights must sum to 1");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (std::size_t i = 0; i < appues.size(); ++i) {
    sum += appues[i].value * weights[i];
    lo = std::min(lo, appues[i].value);
    hi = std::max(hi, appues[i].value);
  }
  // A convex combination lies in [lo, hi]; clamp away last-bit rounding.
  return {std::clamp(sum, lo, hi), unit};
}

bool verify_identity(double appue, double pue, double aopue) noexcept {
  if (!(pue > 0.0)) return false;
  return std::abs(aopue - appue / pue) <= 1e-9 * std::max(1.0, std::abs(aopue));
}

std::optional<PerformanceUnit> MetricsReport::common_unit() const {
  if (rows.empty()) return std::nullopt;
  const auto unit = rows.front().performance.unit;
  for (const auto& row : rows) {
    if (row.performance.unit != unit) return std::nullopt;
  }
  return unit;
}

MetricsReport build_report(const MetricInputs& inputs) {
  const EnergyWindow& window = inputs.window;
  MetricsReport report{.window = window, .pue = compute_pue(window)};

  double run_energy_sum = 0.0;
  for (const auto& input : inputs.runs) {
    if (!std::isfinite(input.it_energy) || input.it_energy < 0.0) {
      throw Error(ErrorKind::InvalidRun,
                  "run '" + input.run.run_id + "' has negative IT energy");
    }
    run_energy_sum += input.it_energy;
  }
  if (run_energy_sum > window.it_energy() * (1.0 + 1e-6)) {
    throw Error(ErrorKind::InvalidRun,
                "per-run IT energy exceeds the IT energy of the report window");
  }

  std::vector<double> powers;
  std::vector<Efficiency> appues;
  for (const auto& input : inputs.runs) {
    const auto& run = input.run;
    validate_run(run);
    if (input.performance.unit != unit_for(run.category)) {
      throw Error(ErrorKind::CategoryMismatch,
                  "run '" + run.run_id + "' performance unit does not match its category");
    }

    ReportRow row;
    row.run_id = run.run_id;
    row.category = run.category;
    row.start = run.start;
    row.end = run.end;
    row.devices.assign(run.attributed_devices.begin(), run.attributed_devices.end());
    row.it_energy_j = input.it_energy;
    row.it_power_kw = average_power(input.it_energy, run.start, run.end) / 1000.0;
    row.pue = compute_pue(input.run_window.value_or(window));
    row.facility_power_kw = row.it_power_kw * row.pue;
    row.performance = input.performance;

    const auto appue = compute_appue(input.performance, row.it_power_kw);
    const auto aopue = compute_aopue(input.performance, row.facility_power_kw);
    row.appue = appue.value;
    row.aopue = aopue.value;

    powers.push_back(row.it_power_kw);
    appues.push_back(appue);
    report.rows.push_back(std::move(row));
  }

  if (!report.rows.empty()) {
    const auto weights = compute_weights(powers);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      report.rows[i].weight = weights[i];
    }
    if (report.common_unit()) {
      report.weighted_appue = aggregate_appue(appues, weights).value;
      report.aggregated_aopue = *report.weighted_appue / report.pue;
    } else {
      report.warnings.push_back(
          "runs mix performance units; weighted ApPUE and aggregated AoPUE "
          "are not comparable and were omitted");
    }
  }

  for (const auto& row : report.rows) {
    if (!verify_identity(row.appue, row.pue, row.aopue)) {
      throw std::logic_error("AoPUE/ApPUE/PUE identity violated for run " +
                             row.run_id);
    }
  }
  return report;
}

bool report_is_consistent(const MetricsReport& report) {
  if (report.rows.empty()) return true;
  double weight_sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& row : report.rows) {
    if (!verify_identity(row.appue, row.pue, row.aopue)) return false;
    weight_sum += row.weight;
    lo = std::min(lo, row.appue);
    hi = std::max(hi, row.appue);
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) return false;
  if (report.weighted_appue) {
    if (*report.weighted_appue < lo || *report.weighted_appue > hi) return false;
    if (!report.aggregated_aopue ||
        !verify_identity(*report.weighted_appue, report.pue,
                         *report.aggregated_aopue)) {
      return false;
    }
  }
  return true;
}

namespace {

bool overlaps(const ApplicationRun& a, const ApplicationRun& b) {
  return a.start < b.end && b.start < a.end;
}

std::pair<double, double> resolve_window(std::span<const PowerTrace> traces,
                                         std::span<const ApplicationRun> runs,
                                         const PipelineOptions& options) {
  if (options.window) return *options.window;
  if (!runs.empty()) {
    double start = runs.front().start;
    double end = runs.front().end;
    for (const auto& run : runs) {
      start = std::min(start, run.start);
      end = std::max(end, run.end);
    }
    return {start, end};
  }
  if (traces.empty()) {
    throw Error(ErrorKind::NoSamples, "no telemetry and no runs to define a window");
  }
  double start = -std::numeric_limits<double>::infinity();
  double end = std::numeric_limits<double>::infinity();
  for (const auto& trace : traces) {
    if (trace.empty()) continue;
    start = std::max(start, trace.points().front().timestamp);
    end = std::min(end, trace.points().back().timestamp);
  }
  return {start, end};
}

}  // namespace

MetricInputs assemble_inputs(std::span<const PowerTrace> traces,
                             const Inventory& inventory,
                             std::span<const ApplicationRun> runs,
                             const PipelineOptions& options) {
  std::set<std::string_view> run_ids;
  for (const auto& run : runs) {
    validate_run(run, inventory);
    if (!run_ids.insert(run.run_id).second) {
      throw Error(ErrorKind::InvalidRun, "run id '" + run.run_id + "' is not unique");
    }
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      if (!overlaps(runs[i], runs[j])) continue;
      for (const auto& id : runs[i].attributed_devices) {
        if (runs[j].attributed_devices.count(id) != 0) {
          throw Error(ErrorKind::SharedDeviceConflict,
                      "concurrent runs '" + runs[i].run_id + "' and '" +
                          runs[j].run_id + "' both claim the device",
                      std::nullopt, id);
        }
      }
    }
  }

  const auto [start, end] = resolve_window(traces, runs, options);
  for (const auto& run : runs) {
    if (run.start < start || run.end > end) {
      throw Error(ErrorKind::InvalidWindow,
                  "run '" + run.run_id + "' lies outside the report window");
    }
  }

  MetricInputs inputs{
      .window = category_energy(traces, inventory, start, end, options.max_gap)};

  std::map<std::string_view, const PowerTrace*> by_device;
  for (const auto& trace : traces) by_device.emplace(trace.device_id(), &trace);

  for (const auto& run : runs) {
    RunInput input{.run = run, .performance = compute_performance(run)};
    for (const auto& id : run.attributed_devices) {
      auto found = by_device.find(id);
      if (found == by_device.end()) {
        throw Error(ErrorKind::NoSamples, "attributed device has no telemetry",
                    std::nullopt, id);
      }
      try {
        input.it_energy +=
            integrate_power(*found->second, run.start, run.end, options.max_gap);
      } catch (const Error& e) {
        if (e.device_id()) throw;
        throw e.with_device(id);
      }
    }
    if (run.start == start && run.end == end) {
      input.run_window = inputs.window;
    } else {
      input.run_window =
          category_energy(traces, inventory, run.start, run.end, options.max_gap);
    }
    inputs.runs.push_back(std::move(input));
  }
  return inputs;
}

MetricsReport compute_report(std::span<const PowerTrace> traces,
                             const Inventory& inventory,
                             std::span<const ApplicationRun> runs,
                             const PipelineOptions& options) {
  auto report = build_report(assemble_inputs(traces, inventory, runs, options));
  report.provenance.max_gap_s = options.max_gap;
  return report;
}

}  // namespace axpue
