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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace axpue {

enum class ErrorKind {
  // Inventory / model validation.
  DuplicateDevice,
  InvalidDevice,
  UnknownDevice,
  InvalidSample,
  InvalidRun,
  InvalidWindow,
  CategoryMismatch,
  SharedDeviceConflict,
  // Telemetry coverage.
  NoSamples,
  CoverageGap,
  // Metric arithmetic.
  ZeroITEnergy,
  ZeroITPower,
  ZeroFacilityPower,
  NoRuns,
  ShapeMismatch,
  UnitMismatch,
  // Input formats.
  ParseError,
  InvalidPower,
  DuplicateSample,
  SchemaError,
  // Simulator.
  ModelError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by missing or sparse telemetry rather than by
/// malformed input. The CLI maps these to a distinct exit code.
bool is_coverage_error(ErrorKind kind) noexcept;

/// The single exception type thrown by the library. Carries a machine-readable
/// kind plus optional input line number and device id for diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message,
        std::optional<std::size_t> line = std::nullopt,
        std::optional<std::string> device_id = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }
  const std::optional<std::string>& device_id() const noexcept {
    return device_id_;
  }
  /// Message without the kind/line/device decoration.
  const std::string& detail() const noexcept { return detail_; }

  /// Same error re-tagged with a device id (keeps kind, line and detail).
  Error with_device(std::string device_id) const;

 private:
  ErrorKind kind_;
  std::string detail_;
  std::optional<std::size_t> line_;
  std::optional<std::string> device_id_;
};

}  // namespace axpue
