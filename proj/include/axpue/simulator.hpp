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

// Deterministic synthetic telemetry. IT devices follow a linear
// utilization->power model driven by piecewise-linear utilization profiles;
// facility overhead is realized as three synthetic devices (cooling, power
// transmission, other) so downstream code sees the full category taxonomy.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axpue/energy.hpp"
#include "axpue/model.hpp"

namespace axpue {

enum class DeviceKind : std::uint8_t { Server, Storage, Fixed };

std::string_view to_string(DeviceKind kind) noexcept;
std::optional<DeviceKind> parse_device_kind(std::string_view text);

struct DevicePowerModel {
  DeviceKind kind = DeviceKind::Server;
  double idle_watts = 0.0;
  double peak_watts = 0.0;

  static DevicePowerModel fixed(double watts) {
    return {DeviceKind::Fixed, watts, watts};
  }
  /// Idle and peak draw of a commodity 2U server and of a storage node.
  static DevicePowerModel reference_server() {
    return {DeviceKind::Server, 290.0, 300.0};
  }
  static DevicePowerModel reference_storage() {
    return {DeviceKind::Storage, 310.0, 390.0};
  }

  /// idle + u * (peak - idle); Fixed ignores u. Throws ModelError when u is
  /// outside [0, 1].
  double power(double utilization) const;

  bool operator==(const DevicePowerModel&) const = default;
};

/// Throws ModelError unless peak >= idle >= 0 (and idle == peak for Fixed).
void validate_model(const DevicePowerModel& model);

struct FacilityOverheadModel {
  double fixed_watts = 0.0;          // lighting and other constant loads
  double cooling_coefficient = 0.0;  // cooling = coefficient * IT power
  double transmission_loss_fraction = 0.0;  // share of facility input lost

  double cooling_watts(double it_watts) const noexcept {
    return cooling_coefficient * it_watts;
  }
  double transmission_watts(double it_watts) const noexcept;
  double total_watts(double it_watts) const noexcept;

  bool operator==(const FacilityOverheadModel&) const = default;
};

void validate_overhead(const FacilityOverheadModel& overhead);

/// Piecewise-linear utilization u(t), t relative to scenario start.
class UtilizationProfile {
 public:
  struct Knot {
    double time;
    double utilization;
    bool operator==(const Knot&) const = default;
  };

  UtilizationProfile() = default;
  /// Times strictly increasing, utilization in [0, 1]. Throws ModelError.
  explicit UtilizationProfile(std::vector<Knot> knots);
  static UtilizationProfile constant(double utilization) {
    return UtilizationProfile({{0.0, utilization}});
  }

  /// Linear between knots, held constant outside them.
  double at(double time) const;
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  bool operator==(const UtilizationProfile&) const = default;

 private:
  std::vector<Knot> knots_;
};

struct SimDevice {
  DeviceRecord record;
  DevicePowerModel model;
  UtilizationProfile profile;

  bool operator==(const SimDevice&) const = default;
};

struct SimScenario {
  std::string name;
  std::uint64_t seed = 0;
  double duration = 0.0;
  double sample_period = 1.0;
  std::vector<SimDevice> devices;
  std::vector<ApplicationRun> runs;
  FacilityOverheadModel overhead;
  /// Amplitude of uniform measurement noise added to IT readings.
  double noise_watts = 0.0;
  /// Free-form description carried into the manifest (e.g. data size).
  std::string description;

  bool operator==(const SimScenario&) const = default;
};

/// Throws ModelError for any invalid parameter.
void validate_scenario(const SimScenario& scenario);

/// Ids of the synthetic overhead devices added by the simulator.
inline constexpr std::string_view kCoolingDeviceId = "facility-cooling";
inline constexpr std::string_view kTransmissionDeviceId = "facility-ups";
inline constexpr std::string_view kOtherDeviceId = "facility-other";

struct SimOutput {
  Inventory inventory;
  std::vector<PowerTrace> traces;
  std::vector<ApplicationRun> runs;

  std::string power_csv;
  std::string runs_jsonl;
  std::string inventory_json;
  std::string manifest_json;
};

/// Instants at which every device is sampled: multiples of sample_period,
/// every profile knot inside [0, duration], and the end point.
std::vector<double> sample_instants(const SimScenario& scenario);

SimOutput simulate(const SimScenario& scenario);

/// Manifest JSON for a scenario (all SimScenario fields plus references to
/// the generated power/runs/inventory files) and its inverse.
std::string write_scenario_json(const SimScenario& scenario);
SimScenario parse_scenario_json(std::string_view text);

/// One row of the reference results table.
struct PaperRow {
  std::string workload;
  double it_power_kw;
  double total_facility_power_kw;
  double performance;
  double pue;
  double appue;
  double aopue;
};

const std::vector<PaperRow>& paper_table();

/// BigDataBench, SVM, Sort, Grep, Linpack with aggregate powers pinned to the
/// table and run durations derived from data size and processing rate.
std::vector<SimScenario> paper_scenarios();

enum class SortVariant { SampledPartition, SingleReducer };

/// Desk-scale sort job on 8 servers and 2 storage nodes. The sampled
/// partition variant spends time on sampling but balances reducers; the
/// single-reducer variant funnels everything through one hot node and runs
/// longer.
SimScenario sort_scenario(SortVariant variant, std::uint64_t data_bytes);

/// (sort1, sort2) over identical data size and overhead.
std::pair<SimScenario, SimScenario> sort_comparison_scenarios();

/// Same scenario with its time axis stretched by `factor` (work unchanged).
SimScenario time_stretched(const SimScenario& scenario, double factor);

/// Resolves "paper:<workload>" (case-insensitive), "paper:sort1",
/// "paper:sort2". Returns nullopt for unknown names.
std::optional<SimScenario> builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

}  // namespace axpue
