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

#include "axpue/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "axpue/error.hpp"
#include "axpue/telemetry_io.hpp"
#include "json_codec.hpp"

namespace axpue {

std::string_view to_string(DeviceKind kind) noexcept {
  switch (kind) {
    case DeviceKind::Server: return "server";
    case DeviceKind::Storage: return "storage";
    case DeviceKind::Fixed: return "fixed";
  }
  return "fixed";
}

std::optional<DeviceKind> parse_device_kind(std::string_view text) {
  for (auto kind : {DeviceKind::Server, DeviceKind::Storage, DeviceKind::Fixed}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void model_error(const std::string& message) {
  throw Error(ErrorKind::ModelError, message);
}

bool finite_non_negative(double value) {
  return std::isfinite(value) && value >= 0.0;
}

}  // namespace

double DevicePowerModel::power(double utilization) const {
  if (!(utilization >= 0.0 && utilization <= 1.0)) {
    model_error("utilization must lie in [0, 1]");
  }
  if (kind == DeviceKind::Fixed) return idle_watts;
  return idle_watts + utilization * (peak_watts - idle_watts);
}

void validate_model(const DevicePowerModel& model) {
  if (!finite_non_negative(model.idle_watts) || !std::isfinite(model.peak_watts) ||
      model.peak_watts < model.idle_watts) {
    model_error("power model requires peak_watts >= idle_watts >= 0");
  }
  if (model.kind == DeviceKind::Fixed && model.peak_watts != model.idle_watts) {
    model_error("fixed power model requires idle_watts == peak_watts");
  }
}

double FacilityOverheadModel::transmission_watts(double it_watts) const noexcept {
  const double delivered = it_watts + cooling_watts(it_watts) + fixed_watts;
  return delivered * transmission_loss_fraction / (1.0 - transmission_loss_fraction);
}

double FacilityOverheadModel::total_watts(double it_watts) const noexcept {
  return it_watts + cooling_watts(it_watts) + fixed_watts +
         transmission_watts(it_watts);
}

void validate_overhead(const FacilityOverheadModel& overhead) {
  if (!finite_non_negative(overhead.fixed_watts) ||
      !finite_non_negative(overhead.cooling_coefficient)) {
    model_error("overhead parameters must be finite and non-negative");
  }
  if (!(overhead.transmission_loss_fraction >= 0.0 &&
        overhead.transmission_loss_fraction < 1.0)) {
    model_error("transmission_loss_fraction must lie in [0, 1)");
  }
}

UtilizationProfile::UtilizationProfile(std::vector<Knot> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) model_error("utilization profile needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto& knot = knots_[i];
    if (!std::isfinite(knot.time)) model_error("profile knot time must be finite");
    if (!(knot.utilization >= 0.0 && knot.utilization <= 1.0)) {
      model_error("profile utilization must lie in [0, 1]");
    }
    if (i > 0 && !(knot.time > knots_[i - 1].time)) {
      model_error("profile knot times must be strictly increasing");
    }
  }
}

double UtilizationProfile::at(double time) const {
  if (knots_.empty()) model_error("utilization profile is empty");
  if (time <= knots_.front().time) return knots_.front().utilization;
  if (time >= knots_.back().time) return knots_.back().utilization;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), time,
                             [](double t, const Knot& k) { return t < k.time; });
  auto lo = hi - 1;
  const double fraction = (time - lo->time) / (hi->time - lo->time);
  return lo->utilization + (hi->utilization - lo->utilization) * fraction;
}

void validate_scenario(const SimScenario& scenario) {
  if (!(std::isfinite(scenario.duration) && scenario.duration > 0.0)) {
    model_error("scenario duration must be positive");
  }
  if (!(std::isfinite(scenario.sample_period) && scenario.sample_period > 0.0)) {
    model_error("sample_period must be positive");
  }
  if (!finite_non_negative(scenario.noise_watts)) {
    model_error("noise_watts must be finite and non-negative");
  }
  if (scenario.devices.empty()) model_error("scenario has no devices");
  validate_overhead(scenario.overhead);

  std::set<std::string> ids;
  for (const auto& device : scenario.devices) {
    const auto& id = device.record.device_id;
    if (id.empty()) model_error("device id must not be empty");
    if (id == kCoolingDeviceId || id == kTransmissionDeviceId || id == kOtherDeviceId) {
      model_error("device id '" + id + "' is reserved for facility overhead");
    }
    if (!ids.insert(id).second) model_error("duplicate device id '" + id + "'");
    if (device.record.category != DeviceCategory::ITEquipment) {
      model_error("simulated device '" + id +
                  "' must be IT equipment; overhead comes from the overhead model");
    }
    validate_model(device.model);
    if (device.profile.knots().empty()) {
      model_error("device '" + id + "' has no utilization profile");
    }
  }
  for (const auto& run : scenario.runs) {
    validate_run(run);
    for (const auto& id : run.attributed_devices) {
      if (ids.count(id) == 0) {
        model_error("run '" + run.run_id + "' attributes unknown device '" + id + "'");
      }
    }
    if (run.start < 0.0 || run.end > scenario.duration) {
      model_error("run '" + run.run_id + "' lies outside [0, duration]");
    }
  }
}

std::vector<double> sample_instants(const SimScenario& scenario) {
  std::vector<double> instants;
  const auto steps = static_cast<std::uint64_t>(
      std::floor(scenario.duration / scenario.sample_period * (1.0 + 1e-12)));
  instants.reserve(steps + 2);
  for (std::uint64_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * scenario.sample_period;
    if (t <= scenario.duration) instants.push_back(t);
  }
  for (const auto& device : scenario.devices) {
    for (const auto& knot : device.profile.knots()) {
      if (knot.time > 0.0 && knot.time < scenario.duration) {
        instants.push_back(knot.time);
      }
    }
  }
  for (const auto& run : scenario.runs) {
    instants.push_back(run.start);
    instants.push_back(run.end);
  }
  instants.push_back(scenario.duration);
  std::sort(instants.begin(), instants.end());

  std::vector<double> unique;
  unique.reserve(instants.size());
  for (double t : instants) {
    if (unique.empty() || t - unique.back() > 1e-9 * std::max(1.0, std::abs(t))) {
      unique.push_back(t);
    }
  }
  // The end point wins over a grid point a hair before it.
  if (unique.back() != scenario.duration) unique.back() = scenario.duration;
  return unique;
}

SimOutput simulate(const SimScenario& scenario) {
  validate_scenario(scenario);
  const auto instants = sample_instants(scenario);

  std::vector<DeviceRecord> records;
  for (const auto& device : scenario.devices) records.push_back(device.record);
  records.push_back({std::string(kCoolingDeviceId), DeviceCategory::Cooling,
                     "synthetic cooling (CRAC/chiller)"});
  records.push_back({std::string(kTransmissionDeviceId),
                     DeviceCategory::PowerTransmission,
                     "synthetic power transmission (UPS/PDU losses)"});
  records.push_back({std::string(kOtherDeviceId), DeviceCategory::Other,
                     "synthetic other loads (lighting)"});

  const std::size_t n_it = scenario.devices.size();
  std::vector<std::vector<PowerTrace::Point>> points(n_it + 3);
  for (auto& series : points) series.reserve(instants.size());

  std::mt19937_64 rng(scenario.seed);
  const auto& overhead = scenario.overhead;
  for (double t : instants) {
    double it_watts = 0.0;
    for (std::size_t i = 0; i < n_it; ++i) {
      const auto& device = scenario.devices[i];
      double watts = device.model.power(device.profile.at(t));
      if (scenario.noise_watts > 0.0) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        watts = std::max(0.0, watts + scenario.noise_watts * (2.0 * unit - 1.0));
      }
      points[i].push_back({t, watts});
      it_watts += watts;
    }
    points[n_it].push_back({t, overhead.cooling_watts(it_watts)});
    points[n_it + 1].push_back({t, overhead.transmission_watts(it_watts)});
    points[n_it + 2].push_back({t, overhead.fixed_watts});
  }

  SimOutput output;
  for (std::size_t i = 0; i < records.size(); ++i) {
    output.traces.emplace_back(records[i].device_id, std::move(points[i]));
  }
  std::sort(output.traces.begin(), output.traces.end(),
            [](const PowerTrace& a, const PowerTrace& b) {
              return a.device_id() < b.device_id();
            });
  output.inventory = validate_inventory(std::move(records));
  output.runs = scenario.runs;
  for (const auto& run : output.runs) validate_run(run, output.inventory);

  output.power_csv = write_power_csv(output.traces);
  output.runs_jsonl = write_runs_jsonl(output.runs);
  output.inventory_json = write_inventory_json(output.inventory);
  output.manifest_json = write_scenario_json(scenario);
  return output;
}

// -- manifest ---------------------------------------------------------------

using detail::Json;

std::string write_scenario_json(const SimScenario& scenario) {
  Json devices = Json::array();
  for (const auto& device : scenario.devices) {
    Json profile = Json::array();
    for (const auto& knot : device.profile.knots()) {
      profile.push_back(Json::array({knot.time, knot.utilization}));
    }
    auto entry = detail::device_to_json(device.record);
    entry["model"] = {{"kind", std::string(to_string(device.model.kind))},
                      {"idle_watts", device.model.idle_watts},
                      {"peak_watts", device.model.peak_watts}};
    entry["profile"] = std::move(profile);
    devices.push_back(std::move(entry));
  }
  Json runs = Json::array();
  for (const auto& run : scenario.runs) runs.push_back(detail::run_to_json(run));

  Json body{
      {"name", scenario.name},
      {"description", scenario.description},
      {"seed", scenario.seed},
      {"duration", scenario.duration},
      {"sample_period", scenario.sample_period},
      {"noise_watts", scenario.noise_watts},
      {"overhead",
       {{"fixed_watts", scenario.overhead.fixed_watts},
        {"cooling_coefficient", scenario.overhead.cooling_coefficient},
        {"transmission_loss_fraction", scenario.overhead.transmission_loss_fraction}}},
      {"devices", std::move(devices)},
      {"runs", std::move(runs)},
  };
  Json manifest{
      {"scenario", std::move(body)},
      {"inventory", "inventory.json"},
      {"power", "power.csv"},
      {"runs", "runs.jsonl"},
  };
  return manifest.dump(2) + "\n";
}

SimScenario parse_scenario_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid scenario JSON: ") + e.what());
  }
  const Json& body = doc.contains("scenario") ? doc.at("scenario") : doc;

  SimScenario scenario;
  scenario.name = detail::require_string(body, "name");
  if (auto it = body.find("description"); it != body.end() && it->is_string()) {
    scenario.description = it->get<std::string>();
  }
  scenario.seed = detail::require_count(detail::require(body, "seed"), "seed");
  scenario.duration = detail::require_number(body, "duration");
  scenario.sample_period = detail::require_number(body, "sample_period");
  if (auto it = body.find("noise_watts"); it != body.end()) {
    scenario.noise_watts = detail::require_number(body, "noise_watts");
  }
  const auto& overhead = detail::require(body, "overhead");
  scenario.overhead.fixed_watts = detail::require_number(overhead, "fixed_watts");
  scenario.overhead.cooling_coefficient =
      detail::require_number(overhead, "cooling_coefficient");
  scenario.overhead.transmission_loss_fraction =
      detail::require_number(overhead, "transmission_loss_fraction");

  const auto& devices = detail::require(body, "devices");
  if (!devices.is_array()) detail::schema_error("'devices' must be an array");
  for (const auto& entry : devices) {
    SimDevice device;
    device.record = detail::device_from_json(entry);
    const auto& model = detail::require(entry, "model");
    const auto kind_text = detail::require_string(model, "kind");
    auto kind = parse_device_kind(kind_text);
    if (!kind) detail::schema_error("unknown device model kind '" + kind_text + "'");
    device.model = {*kind, detail::require_number(model, "idle_watts"),
                    detail::require_number(model, "peak_watts")};
    const auto& profile = detail::require(entry, "profile");
    if (!profile.is_array()) detail::schema_error("'profile' must be an array");
    std::vector<UtilizationProfile::Knot> knots;
    for (const auto& knot : profile) {
      if (!knot.is_array() || knot.size() != 2 || !knot[0].is_number() ||
          !knot[1].is_number()) {
        detail::schema_error("profile knots must be [time, utilization] pairs");
      }
      knots.push_back({knot[0].get<double>(), knot[1].get<double>()});
    }
    device.profile = UtilizationProfile(std::move(knots));
    scenario.devices.push_back(std::move(device));
  }
  const auto& runs = detail::require(body, "runs");
  if (!runs.is_array()) detail::schema_error("'runs' must be an array");
  for (const auto& run : runs) scenario.runs.push_back(detail::run_from_json(run));

  validate_scenario(scenario);
  return scenario;
}

// -- built-in scenarios -----------------------------------------------------

const std::vector<PaperRow>& paper_table() {
  static const std::vector<PaperRow> rows = {
      {"BigDataBench", 100.412, 147.323, 563.271, 1.467, 5.6096, 3.823},
      {"SVM", 103.766, 150.897, 134.854, 1.454, 1.2996, 0.894},
      {"Sort", 92.122, 138.481, 1588.128, 1.503, 17.2394, 11.468},
      {"Grep", 92.331, 138.636, 24916.998, 1.502, 269.866, 179.730},
      {"Linpack", 122.679, 170.685, 50.46, 1.391, 0.411, 0.295},
  };
  return rows;
}

namespace {

// Overhead shape shared by the table scenarios; the fixed load is solved per
// row so that total facility power matches the table exactly.
constexpr double kPaperCoolingCoefficient = 0.30;
constexpr double kPaperTransmissionLoss = 0.05;
constexpr double kPaperSamplePeriod = 30.0;

SimScenario pinned_power_scenario(const std::string& name, const std::string& description,
                                  double it_kw, double total_kw, double duration,
                                  ApplicationCategory category, WorkMeasure work) {
  const double it_watts = it_kw * 1000.0;
  const double total_watts = total_kw * 1000.0;
  SimScenario scenario;
  scenario.name = name;
  scenario.description = description;
  scenario.duration = duration;
  scenario.sample_period = kPaperSamplePeriod;
  scenario.overhead.cooling_coefficient = kPaperCoolingCoefficient;
  scenario.overhead.transmission_loss_fraction = kPaperTransmissionLoss;
  scenario.overhead.fixed_watts = total_watts * (1.0 - kPaperTransmissionLoss) -
                                  it_watts * (1.0 + kPaperCoolingCoefficient);
  scenario.devices.push_back(
      {{"cluster-it", DeviceCategory::ITEquipment,
        "aggregate IT equipment (servers and switchgear)"},
       DevicePowerModel::fixed(it_watts),
       UtilizationProfile::constant(1.0)});
  scenario.runs.push_back({name, category, 0.0, duration, work, {"cluster-it"}});
  return scenario;
}

constexpr std::uint64_t kGB = 1'000'000'000ULL;

SimScenario data_analysis_row(const PaperRow& row, std::uint64_t data_bytes,
                              const std::string& description) {
  const double kilobytes = static_cast<double>(data_bytes) / kBytesPerKilobyte;
  const double duration = kilobytes / row.performance;
  return pinned_power_scenario(row.workload, description, row.it_power_kw,
                               row.total_facility_power_kw, duration,
                               ApplicationCategory::DataAnalysis,
                               BytesProcessed{data_bytes});
}

}  // namespace

std::vector<SimScenario> paper_scenarios() {
  const auto& table = paper_table();
  std::vector<SimScenario> scenarios;
  scenarios.push_back(data_analysis_row(table[0], 100 * kGB,
                                        "BigDataBench, 100GB, comprehensive workload"));
  scenarios.push_back(data_analysis_row(table[1], 20 * kGB, "SVM, 20GB, single workload"));
  scenarios.push_back(data_analysis_row(table[2], 100 * kGB, "Sort, 100GB, single workload"));
  scenarios.push_back(data_analysis_row(table[3], 100 * kGB, "Grep, 100GB, single workload"));

  // Linpack: one hour at the table rate; 50.46 GFLOPS * 3600 s.
  const auto& linpack = table[4];
  constexpr double kLinpackSeconds = 3600.0;
  constexpr std::uint64_t kLinpackFlops = 5046ULL * 3600ULL * 10'000'000ULL;
  scenarios.push_back(pinned_power_scenario(
      linpack.workload, "Linpack, 32GB, HPC workload", linpack.it_power_kw,
      linpack.total_facility_power_kw, kLinpackSeconds,
      ApplicationCategory::HighPerformanceComputing, FloatingPointOps{kLinpackFlops}));
  return scenarios;
}

namespace {

struct Phase {
  double length;
  double server_u;   // every server, except the hot node when set
  double hot_u;      // node-1
  double storage_u;
};

// Piecewise-linear profile through phase plateaus with short ramps between
// them.
UtilizationProfile phase_profile(const std::vector<Phase>& phases,
                                 double Phase::*level) {
  constexpr double kRamp = 1.0;
  std::vector<UtilizationProfile::Knot> knots;
  double t = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double u = phases[i].*level;
    const double begin = i == 0 ? t : t + kRamp;
    const double end = i + 1 == phases.size() ? t + phases[i].length
                                              : t + phases[i].length - kRamp;
    knots.push_back({begin, u});
    knots.push_back({end, u});
    t += phases[i].length;
  }
  return UtilizationProfile(std::move(knots));
}

constexpr int kSortServers = 8;
constexpr int kSortStorage = 2;
// Per-node map/reduce throughput of the desk-scale cluster, bytes/s.
constexpr double kMapThroughput = 25e6;
constexpr double kReduceThroughput = 20e6;
constexpr double kSingleReducerThroughput = 60e6;

}  // namespace

SimScenario sort_scenario(SortVariant variant, std::uint64_t data_bytes) {
  const double bytes = static_cast<double>(data_bytes);
  const double startup = 20.0;
  const double map = bytes / (kSortServers * kMapThroughput);

  std::vector<Phase> phases;
  phases.push_back({startup, 0.15, 0.15, 0.2});
  if (variant == SortVariant::SampledPartition) {
    const double sampling = 10.0 + bytes / 2e9;
    const double reduce = bytes / (kSortServers * kReduceThroughput);
    phases.push_back({sampling, 0.3, 0.3, 0.5});
    phases.push_back({map, 0.85, 0.85, 0.6});
    phases.push_back({reduce, 0.7, 0.7, 0.8});
  } else {
    // Every map output is merged on one node; merge passes grow with size.
    const double merge_factor = 1.0 + 0.15 * std::log2(1.0 + bytes / 4e9);
    const double reduce = bytes / kSingleReducerThroughput * merge_factor;
    phases.push_back({map, 0.85, 0.85, 0.6});
    phases.push_back({reduce, 0.05, 1.0, 0.4});
  }
  double duration = 0.0;
  for (const auto& phase : phases) duration += phase.length;

  const bool sampled = variant == SortVariant::SampledPartition;
  SimScenario scenario;
  scenario.name = sampled ? "sort1" : "sort2";
  scenario.description =
      std::string(sampled ? "sort with sampled range partitioning"
                          : "sort with a single reducer") +
      ", " + std::to_string(data_bytes / 1'000'000ULL) + "MB";
  scenario.duration = duration;
  scenario.sample_period = 5.0;
  scenario.overhead = {600.0, 0.35, 0.06};

  std::set<std::string> all_devices;
  for (int i = 1; i <= kSortServers; ++i) {
    const auto id = "node-" + std::to_string(i);
    scenario.devices.push_back(
        {{id, DeviceCategory::ITEquipment, i == 1 ? "server (reducer)" : "server"},
         DevicePowerModel::reference_server(),
         phase_profile(phases, i == 1 ? &Phase::hot_u : &Phase::server_u)});
    all_devices.insert(id);
  }
  for (int i = 1; i <= kSortStorage; ++i) {
    const auto id = "storage-" + std::to_string(i);
    scenario.devices.push_back({{id, DeviceCategory::ITEquipment, "storage node"},
                                DevicePowerModel::reference_storage(),
                                phase_profile(phases, &Phase::storage_u)});
    all_devices.insert(id);
  }
  scenario.devices.push_back({{"switch-1", DeviceCategory::ITEquipment, "top-of-rack switch"},
                              DevicePowerModel::fixed(150.0),
                              UtilizationProfile::constant(0.0)});
  all_devices.insert("switch-1");

  scenario.runs.push_back({scenario.name, ApplicationCategory::DataAnalysis, 0.0,
                           duration, BytesProcessed{data_bytes}, all_devices});
  return scenario;
}

std::pair<SimScenario, SimScenario> sort_comparison_scenarios() {
  constexpr std::uint64_t kDataBytes = 10 * kGB;
  return {sort_scenario(SortVariant::SampledPartition, kDataBytes),
          sort_scenario(SortVariant::SingleReducer, kDataBytes)};
}

SimScenario time_stretched(const SimScenario& scenario, double factor) {
  if (!(std::isfinite(factor) && factor > 0.0)) {
    model_error("stretch factor must be positive");
  }
  SimScenario out = scenario;
  out.name += "-x" + format_exact(factor);
  out.duration *= factor;
  for (auto& device : out.devices) {
    auto knots = device.profile.knots();
    for (auto& knot : knots) knot.time *= factor;
    device.profile = UtilizationProfile(std::move(knots));
  }
  for (auto& run : out.runs) {
    run.start *= factor;
    run.end *= factor;
  }
  return out;
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& row : paper_table()) {
    std::string name = "paper:";
    for (char c : row.workload) {
      name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    names.push_back(std::move(name));
  }
  names.push_back("paper:sort1");
  names.push_back("paper:sort2");
  return names;
}

std::optional<SimScenario> builtin_scenario(std::string_view name) {
  std::string lowered;
  for (char c : name) {
    lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lowered == "paper:sort1") return sort_comparison_scenarios().first;
  if (lowered == "paper:sort2") return sort_comparison_scenarios().second;
  const auto names = builtin_scenario_names();
  for (std::size_t i = 0; i < paper_table().size(); ++i) {
    if (lowered == names[i]) return paper_scenarios()[i];
  }
  return std::nullopt;
}

}  // namespace axpue
