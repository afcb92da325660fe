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

#include "axpue/model.hpp"

#include <cmath>

#include "axpue/error.hpp"

namespace axpue {

std::string_view to_string(DeviceCategory category) noexcept {
  switch (category) {
    case DeviceCategory::PowerTransmission: return "power_transmission";
    case DeviceCategory::Cooling: return "cooling";
    case DeviceCategory::ITEquipment: return "it_equipment";
    case DeviceCategory::Other: return "other";
  }
  return "other";
}

std::optional<DeviceCategory> parse_device_category(std::string_view text) {
  for (auto category : kAllDeviceCategories) {
    if (text == to_string(category)) return category;
  }
  if (text == "it") return DeviceCategory::ITEquipment;
  return std::nullopt;
}

const DeviceRecord* Inventory::find(std::string_view device_id) const {
  auto it = index_.find(device_id);
  return it == index_.end() ? nullptr : &devices_[it->second];
}

DeviceCategory Inventory::category_of(std::string_view device_id) const {
  const auto* record = find(device_id);
  if (record == nullptr) {
    throw Error(ErrorKind::UnknownDevice,
                "device '" + std::string(device_id) + "' is not in the inventory");
  }
  return record->category;
}

std::vector<std::string> Inventory::ids_in(DeviceCategory category) const {
  std::vector<std::string> out;
  for (const auto& device : devices_) {
    if (device.category == category) out.push_back(device.device_id);
  }
  return out;
}

Inventory validate_inventory(std::vector<DeviceRecord> devices) {
  Inventory inventory;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const auto& id = devices[i].device_id;
    if (id.empty()) {
      throw Error(ErrorKind::InvalidDevice,
                  "device #" + std::to_string(i) + " has an empty id");
    }
    if (!inventory.index_.emplace(id, i).second) {
      throw Error(ErrorKind::DuplicateDevice,
                  "device id '" + id + "' appears more than once");
    }
  }
  inventory.devices_ = std::move(devices);
  return inventory;
}

void validate_sample(const PowerSample& sample) {
  if (!std::isfinite(sample.timestamp)) {
    throw Error(ErrorKind::InvalidSample, "timestamp is not finite",
                std::nullopt, sample.device_id);
  }
  if (!std::isfinite(sample.watts) || sample.watts < 0.0) {
    throw Error(ErrorKind::InvalidSample,
                "power must be a finite non-negative number", std::nullopt,
                sample.device_id);
  }
}

std::string_view to_string(ApplicationCategory category) noexcept {
  switch (category) {
    case ApplicationCategory::Service: return "service";
    case ApplicationCategory::DataAnalysis: return "data_analysis";
    case ApplicationCategory::InteractiveRealTime: return "interactive_real_time";
    case ApplicationCategory::HighPerformanceComputing: return "hpc";
  }
  return "data_analysis";
}

std::optional<ApplicationCategory> parse_application_category(
    std::string_view text) {
  for (auto category :
       {ApplicationCategory::Service, ApplicationCategory::DataAnalysis,
        ApplicationCategory::InteractiveRealTime,
        ApplicationCategory::HighPerformanceComputing}) {
    if (text == to_string(category)) return category;
  }
  return std::nullopt;
}

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::string_view work_type_name(const WorkMeasure& work) noexcept {
  return std::visit(
      overloaded{
          [](const BytesProcessed&) { return std::string_view("bytes_processed"); },
          [](const RequestsAnswered&) { return std::string_view("requests_answered"); },
          [](const TransactionsCompleted&) {
            return std::string_view("transactions_completed");
          },
          [](const FloatingPointOps&) {
            return std::string_view("floating_point_ops");
          },
      },
      work);
}

std::uint64_t work_count(const WorkMeasure& work) noexcept {
  return std::visit(
      overloaded{
          [](const BytesProcessed& w) { return w.bytes; },
          [](const auto& w) { return w.count; },
      },
      work);
}

std::optional<WorkMeasure> make_work(std::string_view type_name,
                                     std::uint64_t count) {
  if (type_name == "bytes_processed") return BytesProcessed{count};
  if (type_name == "requests_answered") return RequestsAnswered{count};
  if (type_name == "transactions_completed") return TransactionsCompleted{count};
  if (type_name == "floating_point_ops") return FloatingPointOps{count};
  return std::nullopt;
}

bool work_matches(ApplicationCategory category, const WorkMeasure& work) noexcept {
  switch (category) {
    case ApplicationCategory::Service:
      return std::holds_alternative<RequestsAnswered>(work);
    case ApplicationCategory::DataAnalysis:
      return std::holds_alternative<BytesProcessed>(work);
    case ApplicationCategory::InteractiveRealTime:
      return std::holds_alternative<TransactionsCompleted>(work);
    case ApplicationCategory::HighPerformanceComputing:
      return std::holds_alternative<FloatingPointOps>(work);
  }
  return false;
}

void validate_run(const ApplicationRun& run) {
  if (run.run_id.empty()) {
    throw Error(ErrorKind::InvalidRun, "run has an empty run_id");
  }
  if (!std::isfinite(run.start) || !std::isfinite(run.end) ||
      !(run.end > run.start)) {
    throw Error(ErrorKind::InvalidWindow,
                "run '" + run.run_id + "' must satisfy end > start");
  }
  if (!work_matches(run.category, run.work)) {
    throw Error(ErrorKind::CategoryMismatch,
                "run '" + run.run_id + "' of category " +
                    std::string(to_string(run.category)) + " cannot report " +
                    std::string(work_type_name(run.work)));
  }
  if (run.attributed_devices.empty()) {
    throw Error(ErrorKind::InvalidRun,
                "run '" + run.run_id + "' has no attributed devices");
  }
}

void validate_run(const ApplicationRun& run, const Inventory& inventory) {
  validate_run(run);
  for (const auto& id : run.attributed_devices) {
    const auto* record = inventory.find(id);
    if (record == nullptr) {
      throw Error(ErrorKind::UnknownDevice,
                  "run '" + run.run_id + "' references unknown device '" + id +
                      "'",
                  std::nullopt, id);
    }
    if (record->category != DeviceCategory::ITEquipment) {
      throw Error(ErrorKind::InvalidRun,
                  "run '" + run.run_id + "' attributes non-IT device '" + id +
                      "'",
                  std::nullopt, id);
    }
  }
}

EnergyWindow::EnergyWindow(double start, double end, Energies joules_by_category)
    : start_(start), end_(end), energies_(joules_by_category), total_(0.0) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
    throw Error(ErrorKind::InvalidWindow, "energy window must satisfy end > start");
  }
  for (double joules : energies_) {
    if (!std::isfinite(joules) || joules < 0.0) {
      throw Error(ErrorKind::InvalidSample,
                  "category energy must be finite and non-negative");
    }
  }
  // Fixed summation order keeps the total bit-reproducible.
  for (double joules : energies_) total_ += joules;
}

double EnergyWindow::it_power_kw() const noexcept {
  return it_energy() / duration() / 1000.0;
}

double EnergyWindow::total_facility_power_kw() const noexcept {
  return total_ / duration() / 1000.0;
}

}  // namespace axpue
