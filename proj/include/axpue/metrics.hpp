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

// PUE and the application-level efficiency metrics built on top of it:
//
//   PUE        = total facility energy / IT energy
//   ApPUE_i    = performance_i / IT power_i           (perf unit per kW)
//   w_i        = IT power_i / sum_j IT power_j
//   ApPUE      = sum_i ApPUE_i * w_i
//   AoPUE_i    = performance_i / facility power_i  = ApPUE_i / PUE
//
// Powers are averages over the relevant window, in kilowatts.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axpue/energy.hpp"
#include "axpue/model.hpp"
#include "axpue/performance.hpp"

namespace axpue {

/// An ApPUE or AoPUE value: performance units per kilowatt.
struct Efficiency {
  double value = 0.0;
  PerformanceUnit unit = PerformanceUnit::KBPerSecond;

  bool operator==(const Efficiency&) const = default;
};

/// Errors: ZeroITEnergy.
double compute_pue(const EnergyWindow& window);

/// Errors: ZeroITPower (it_power_kw <= 0).
Efficiency compute_appue(const PerformanceRate& performance, double it_power_kw);

/// Errors: NoRuns, ZeroITPower (all zero), InvalidSample (negative power).
std::vector<double> compute_weights(std::span<const double> it_power_kw);

/// Errors: ShapeMismatch, NoRuns, UnitMismatch, InvalidSample (weights do
/// not sum to 1 within 1e-9).
Efficiency aggregate_appue(std::span<const Efficiency> appues,
                           std::span<const double> weights);

/// Errors: ZeroFacilityPower.
Efficiency compute_aopue(const PerformanceRate& performance,
                         double total_facility_power_kw);

/// |aopue - appue/pue| <= 1e-9 * max(1, |aopue|).
bool verify_identity(double appue, double pue, double aopue) noexcept;

struct RunInput {
  ApplicationRun run;
  double it_energy = 0.0;  // joules drawn by the run's attributed devices
  PerformanceRate performance;
  /// Category energies over the run's own window. When absent the report
  /// window stands in for it.
  std::optional<EnergyWindow> run_window;
};

struct MetricInputs {
  EnergyWindow window;
  std::vector<RunInput> runs;
};

struct ReportRow {
  std::string run_id;
  ApplicationCategory category = ApplicationCategory::DataAnalysis;
  double start = 0.0;
  double end = 0.0;
  std::vector<std::string> devices;
  double it_energy_j = 0.0;
  double it_power_kw = 0.0;
  double facility_power_kw = 0.0;
  double pue = 0.0;  // PUE of the run's own window
  PerformanceRate performance;
  double appue = 0.0;
  double aopue = 0.0;
  double weight = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct Provenance {
  std::string integration = "trapezoidal";
  double bytes_per_kb = kBytesPerKilobyte;
  std::optional<double> max_gap_s;

  bool operator==(const Provenance&) const = default;
};

struct MetricsReport {
  EnergyWindow window;
  double pue = 0.0;
  std::vector<ReportRow> rows;
  /// Null when there are no rows or the rows mix performance units.
  std::optional<double> weighted_appue;
  std::optional<double> aggregated_aopue;
  Provenance provenance;
  std::vector<std::string> warnings;

  /// Common performance unit of all rows, if there is one.
  std::optional<PerformanceUnit> common_unit() const;

  bool operator==(const MetricsReport&) const = default;
};

/// Composes the report from pre-integrated inputs. Errors: everything the
/// component operations raise, plus InvalidRun when per-run IT energy is
/// negative or exceeds the window's IT energy.
MetricsReport build_report(const MetricInputs& inputs);

/// Row-wise identity, weight normalization and convexity of the aggregate.
bool report_is_consistent(const MetricsReport& report);

struct PipelineOptions {
  std::optional<std::pair<double, double>> window;
  double max_gap = 60.0;
};

/// Integrates telemetry into MetricInputs. The report window defaults to the
/// span of all runs (or of the telemetry when there are no runs). Each run's
/// IT energy is the sum over its attributed devices inside its own window;
/// overlapping runs may not share a device (SharedDeviceConflict).
MetricInputs assemble_inputs(std::span<const PowerTrace> traces,
                             const Inventory& inventory,
                             std::span<const ApplicationRun> runs,
                             const PipelineOptions& options);

/// assemble_inputs followed by build_report, with provenance filled in.
MetricsReport compute_report(std::span<const PowerTrace> traces,
                             const Inventory& inventory,
                             std::span<const ApplicationRun> runs,
                             const PipelineOptions& options);

}  // namespace axpue
