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

#include "axpue/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "axpue/error.hpp"

namespace axpue {

PowerTrace::PowerTrace(std::string device_id, std::vector<Point> points)
    : device_id_(std::move(device_id)), points_(std::move(points)) {
  if (device_id_.empty()) {
    throw Error(ErrorKind::InvalidDevice, "trace has an empty device id");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    validate_sample({device_id_, points_[i].timestamp, points_[i].watts});
    if (i > 0 && !(points_[i].timestamp > points_[i - 1].timestamp)) {
      throw Error(ErrorKind::DuplicateSample,
                  "timestamps must be strictly increasing", std::nullopt,
                  device_id_);
    }
  }
}

PowerTrace PowerTrace::scaled(double factor) const {
  std::vector<Point> points(points_.begin(), points_.end());
  for (auto& point : points) point.watts *= factor;
  return PowerTrace(device_id_, std::move(points));
}

namespace {

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(15);
  os << t;
  return os.str();
}

[[noreturn]] void throw_gap(double from, double to, double max_gap) {
  throw Error(ErrorKind::CoverageGap,
              "no samples between t=" + format_time(from) + " and t=" +
                  format_time(to) + " (gap " + format_time(to - from) +
                  " s exceeds max_gap " + format_time(max_gap) + " s)");
}

// Power at `t`, linear between samples and held flat beyond the ends.
double value_at(std::span<const PowerTrace::Point> points, double t) {
  if (t <= points.front().timestamp) return points.front().watts;
  if (t >= points.back().timestamp) return points.back().watts;
  auto hi = std::upper_bound(
      points.begin(), points.end(), t,
      [](double value, const PowerTrace::Point& p) { return value < p.timestamp; });
  auto lo = hi - 1;
  if (t == lo->timestamp) return lo->watts;
  const double fraction = (t - lo->timestamp) / (hi->timestamp - lo->timestamp);
  return lo->watts + (hi->watts - lo->watts) * fraction;
}

}  // namespace

double integrate_power(const PowerTrace& trace, double start, double end,
                       double max_gap) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
    throw Error(ErrorKind::InvalidWindow, "integration window must satisfy end > start");
  }
  if (!(max_gap >= 0.0)) {
    throw Error(ErrorKind::InvalidWindow, "max_gap must be non-negative");
  }
  const auto points = trace.points();
  if (points.empty()) {
    throw Error(ErrorKind::NoSamples, "trace has no samples", std::nullopt,
                trace.device_id());
  }

  const double first = points.front().timestamp;
  const double last = points.back().timestamp;
  if (first > start && first - start > max_gap) throw_gap(start, first, max_gap);
  if (last < end && end - last > max_gap) throw_gap(last, end, max_gap);

  // Samples strictly inside the window.
  auto inner_begin = std::upper_bound(
      points.begin(), points.end(), start,
      [](double value, const PowerTrace::Point& p) { return value < p.timestamp; });
  auto inner_end = std::lower_bound(
      inner_begin, points.end(), end,
      [](const PowerTrace::Point& p, double value) { return p.timestamp < value; });

  // Every sample interval overlapping the open window must respect max_gap.
  {
    auto lo = inner_begin == points.begin() ? inner_begin : inner_begin - 1;
    auto hi = inner_end == points.end() ? inner_end : inner_end + 1;
    for (auto it = lo; it + 1 < hi; ++it) {
      const double gap = (it + 1)->timestamp - it->timestamp;
      if (gap > max_gap) throw_gap(it->timestamp, (it + 1)->timestamp, max_gap);
    }
  }

  double energy = 0.0;
  double t = start;
  double p = value_at(points, start);
  for (auto it = inner_begin; it != inner_end; ++it) {
    energy += 0.5 * (p + it->watts) * (it->timestamp - t);
    t = it->timestamp;
    p = it->watts;
  }
  energy += 0.5 * (p + value_at(points, end)) * (end - t);
  return energy;
}

double average_power(double energy_joules, double start, double end) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
    throw Error(ErrorKind::InvalidWindow, "averaging window must satisfy end > start");
  }
  if (!std::isfinite(energy_joules) || energy_joules < 0.0) {
    throw Error(ErrorKind::InvalidSample, "energy must be finite and non-negative");
  }
  return energy_joules / (end - start);
}

EnergyWindow category_energy(std::span<const PowerTrace> traces,
                             const Inventory& inventory, double start,
                             double end, double max_gap) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
    throw Error(ErrorKind::InvalidWindow, "energy window must satisfy end > start");
  }
  std::map<std::string_view, const PowerTrace*> by_device;
  for (const auto& trace : traces) {
    if (!inventory.contains(trace.device_id())) {
      throw Error(ErrorKind::UnknownDevice,
                  "telemetry for device '" + trace.device_id() +
                      "' which is not in the inventory",
                  std::nullopt, trace.device_id());
    }
    if (!by_device.emplace(trace.device_id(), &trace).second) {
      throw Error(ErrorKind::DuplicateDevice,
                  "more than one trace for device '" + trace.device_id() + "'",
                  std::nullopt, trace.device_id());
    }
  }

  EnergyWindow::Energies energies{};
  for (const auto& device : inventory.devices()) {
    auto found = by_device.find(device.device_id);
    if (found == by_device.end()) {
      throw Error(ErrorKind::NoSamples, "inventory device has no telemetry",
                  std::nullopt, device.device_id);
    }
    double joules = 0.0;
    try {
      joules = integrate_power(*found->second, start, end, max_gap);
    } catch (const Error& e) {
      if (e.device_id()) throw;
      throw e.with_device(device.device_id);
    }
    energies[static_cast<std::size_t>(device.category)] += joules;
  }
  return EnergyWindow(start, end, energies);
}

}  // namespace axpue
