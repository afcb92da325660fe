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

// Domain types shared by every axpue module. Everything here is an immutable
// value after construction.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace axpue {

/// Facility component taxonomy. Every metered device belongs to exactly one.
enum class DeviceCategory : std::uint8_t {
  PowerTransmission = 0,
  Cooling = 1,
  ITEquipment = 2,
  Other = 3,
};

inline constexpr std::array<DeviceCategory, 4> kAllDeviceCategories = {
    DeviceCategory::PowerTransmission, DeviceCategory::Cooling,
    DeviceCategory::ITEquipment, DeviceCategory::Other};

std::string_view to_string(DeviceCategory category) noexcept;
std::optional<DeviceCategory> parse_device_category(std::string_view text);

struct DeviceRecord {
  std::string device_id;
  DeviceCategory category = DeviceCategory::Other;
  std::string label;

  bool operator==(const DeviceRecord&) const = default;
};

/// A validated device list: unique non-empty ids, indexed by id.
class Inventory {
 public:
  Inventory() = default;

  const std::vector<DeviceRecord>& devices() const noexcept { return devices_; }
  std::size_t size() const noexcept { return devices_.size(); }
  bool empty() const noexcept { return devices_.empty(); }

  const DeviceRecord* find(std::string_view device_id) const;
  bool contains(std::string_view device_id) const {
    return find(device_id) != nullptr;
  }
  /// Throws UnknownDevice when the id is not in the inventory.
  DeviceCategory category_of(std::string_view device_id) const;
  std::vector<std::string> ids_in(DeviceCategory category) const;

 private:
  friend Inventory validate_inventory(std::vector<DeviceRecord> devices);

  std::vector<DeviceRecord> devices_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Errors: DuplicateDevice, InvalidDevice (empty id).
Inventory validate_inventory(std::vector<DeviceRecord> devices);

struct PowerSample {
  std::string device_id;
  double timestamp = 0.0;  // seconds since epoch
  double watts = 0.0;

  bool operator==(const PowerSample&) const = default;
};

/// Throws InvalidSample for non-finite timestamps or negative/non-finite power.
void validate_sample(const PowerSample& sample);

enum class ApplicationCategory : std::uint8_t {
  Service,
  DataAnalysis,
  InteractiveRealTime,
  HighPerformanceComputing,
};

std::string_view to_string(ApplicationCategory category) noexcept;
std::optional<ApplicationCategory> parse_application_category(
    std::string_view text);

struct BytesProcessed {
  std::uint64_t bytes = 0;
  bool operator==(const BytesProcessed&) const = default;
};
struct RequestsAnswered {
  std::uint64_t count = 0;
  bool operator==(const RequestsAnswered&) const = default;
};
struct TransactionsCompleted {
  std::uint64_t count = 0;
  bool operator==(const TransactionsCompleted&) const = default;
};
struct FloatingPointOps {
  std::uint64_t count = 0;
  bool operator==(const FloatingPointOps&) const = default;
};

using WorkMeasure = std::variant<BytesProcessed, RequestsAnswered,
                                 TransactionsCompleted, FloatingPointOps>;

std::string_view work_type_name(const WorkMeasure& work) noexcept;
std::uint64_t work_count(const WorkMeasure& work) noexcept;
/// Builds a measure from its type name ("bytes_processed", ...).
std::optional<WorkMeasure> make_work(std::string_view type_name,
                                     std::uint64_t count);
/// The work measure each application category is scored by.
bool work_matches(ApplicationCategory category, const WorkMeasure& work) noexcept;

struct ApplicationRun {
  std::string run_id;
  ApplicationCategory category = ApplicationCategory::DataAnalysis;
  double start = 0.0;
  double end = 0.0;
  WorkMeasure work;
  std::set<std::string> attributed_devices;

  double duration() const noexcept { return end - start; }
  bool operator==(const ApplicationRun&) const = default;
};

/// Checks the run on its own: non-empty id, finite end > start, tag matches
/// category, at least one device. Throws InvalidRun / InvalidWindow /
/// CategoryMismatch.
void validate_run(const ApplicationRun& run);

/// validate_run plus: every attributed device exists (UnknownDevice) and is
/// IT equipment (InvalidRun).
void validate_run(const ApplicationRun& run, const Inventory& inventory);

/// Integrated energy per facility category over [start, end]. Totals are
/// derived from the category energies, never stored separately.
class EnergyWindow {
 public:
  using Energies = std::array<double, 4>;  // indexed by DeviceCategory

  /// Throws InvalidWindow when end <= start, InvalidSample when an energy is
  /// negative or non-finite.
  EnergyWindow(double start, double end, Energies joules_by_category);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  double duration() const noexcept { return end_ - start_; }

  double energy(DeviceCategory category) const noexcept {
    return energies_[static_cast<std::size_t>(category)];
  }
  const Energies& energies() const noexcept { return energies_; }
  double it_energy() const noexcept {
    return energy(DeviceCategory::ITEquipment);
  }
  double total_facility_energy() const noexcept { return total_; }

  /// Average powers over the window, in kilowatts.
  double it_power_kw() const noexcept;
  double total_facility_power_kw() const noexcept;

  bool operator==(const EnergyWindow&) const = default;

 private:
  double start_;
  double end_;
  Energies energies_;
  double total_;
};

}  // namespace axpue
