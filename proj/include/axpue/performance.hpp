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
#include <string_view>

#include "axpue/model.hpp"

namespace axpue {

inline constexpr double kBytesPerKilobyte = 1000.0;
inline constexpr double kFlopsPerGigaflop = 1e9;

/// Unit of an application's data processing rate. HPC rates are carried in
/// GFLOPS so that efficiency quotients come out in the customary scale.
enum class PerformanceUnit : std::uint8_t {
  KBPerSecond,
  RequestsPerSecond,
  TransactionsPerSecond,
  GigaFlopsPerSecond,
};

/// Short display label, e.g. "KB/s" or "GFLOPS".
std::string_view unit_label(PerformanceUnit unit) noexcept;
/// Stable identifier used in serialized reports, e.g. "kb_per_s".
std::string_view to_string(PerformanceUnit unit) noexcept;
std::optional<PerformanceUnit> parse_performance_unit(std::string_view text);

PerformanceUnit unit_for(ApplicationCategory category) noexcept;

struct PerformanceRate {
  double value = 0.0;
  PerformanceUnit unit = PerformanceUnit::KBPerSecond;

  bool operator==(const PerformanceRate&) const = default;
};

/// Work counter divided by run duration, in the category's unit.
/// Errors: CategoryMismatch, InvalidWindow.
PerformanceRate compute_performance(const ApplicationRun& run);

}  // namespace axpue
