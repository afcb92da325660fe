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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "axpue/model.hpp"

namespace axpue {

/// Time-ordered power readings of a single device.
class PowerTrace {
 public:
  struct Point {
    double timestamp;
    double watts;
    bool operator==(const Point&) const = default;
  };

  PowerTrace() = default;
  /// Throws InvalidDevice for an empty id, InvalidSample for bad values and
  /// DuplicateSample when timestamps are not strictly increasing.
  PowerTrace(std::string device_id, std::vector<Point> points);

  const std::string& device_id() const noexcept { return device_id_; }
  std::span<const Point> points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }

  /// Copy with every power value multiplied by `factor` (>= 0).
  PowerTrace scaled(double factor) const;

  bool operator==(const PowerTrace&) const = default;

 private:
  std::string device_id_;
  std::vector<Point> points_;
};

/// Trapezoidal energy in joules over [start, end]. Window edges falling
/// between samples are linearly interpolated; edges beyond the first/last
/// sample are held constant if they are no more than `max_gap` away.
///
/// Errors: InvalidWindow (end <= start), NoSamples (empty trace),
/// CoverageGap (any uncovered stretch inside the window longer than max_gap).
double integrate_power(const PowerTrace& trace, double start, double end,
                       double max_gap);

/// Mean power in watts. Errors: InvalidWindow, InvalidSample (energy < 0).
double average_power(double energy_joules, double start, double end);

/// Energy per facility category over [start, end]. Every inventory device
/// must have exactly one trace; integration errors are re-tagged with the
/// offending device id.
///
/// Errors: UnknownDevice, DuplicateDevice, NoSamples, CoverageGap,
/// InvalidWindow.
EnergyWindow category_energy(std::span<const PowerTrace> traces,
                             const Inventory& inventory, double start,
                             double end, double max_gap);

}  // namespace axpue
