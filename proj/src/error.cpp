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

#include "axpue/error.hpp"

namespace axpue {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DuplicateDevice: return "DuplicateDevice";
    case ErrorKind::InvalidDevice: return "InvalidDevice";
    case ErrorKind::UnknownDevice: return "UnknownDevice";
    case ErrorKind::InvalidSample: return "InvalidSample";
    case ErrorKind::InvalidRun: return "InvalidRun";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
    case ErrorKind::CategoryMismatch: return "CategoryMismatch";
    case ErrorKind::SharedDeviceConflict: return "SharedDeviceConflict";
    case ErrorKind::NoSamples: return "NoSamples";
    case ErrorKind::CoverageGap: return "CoverageGap";
    case ErrorKind::ZeroITEnergy: return "ZeroITEnergy";
    case ErrorKind::ZeroITPower: return "ZeroITPower";
    case ErrorKind::ZeroFacilityPower: return "ZeroFacilityPower";
    case ErrorKind::NoRuns: return "NoRuns";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnitMismatch: return "UnitMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidPower: return "InvalidPower";
    case ErrorKind::DuplicateSample: return "DuplicateSample";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ModelError: return "ModelError";
  }
  return "Unknown";
}

bool is_coverage_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::NoSamples || kind == ErrorKind::CoverageGap;
}

namespace {

std::string decorate(ErrorKind kind, const std::string& detail,
                     const std::optional<std::size_t>& line,
                     const std::optional<std::string>& device_id) {
  std::string out(to_string(kind));
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (device_id) out += " [device " + *device_id + "]";
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message,
             std::optional<std::size_t> line,
             std::optional<std::string> device_id)
    : std::runtime_error(decorate(kind, message, line, device_id)),
      kind_(kind),
      detail_(std::move(message)),
      line_(line),
      device_id_(std::move(device_id)) {}

Error Error::with_device(std::string device_id) const {
  return Error(kind_, detail_, line_, std::move(device_id));
}

}  // namespace axpue
