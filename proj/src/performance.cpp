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

#include "axpue/performance.hpp"

#include <cmath>

#include "axpue/error.hpp"

namespace axpue {

std::string_view unit_label(PerformanceUnit unit) noexcept {
  switch (unit) {
    case PerformanceUnit::KBPerSecond: return "KB/s";
    case PerformanceUnit::RequestsPerSecond: return "req/s";
    case PerformanceUnit::TransactionsPerSecond: return "tx/s";
    case PerformanceUnit::GigaFlopsPerSecond: return "GFLOPS";
  }
  return "";
}

std::string_view to_string(PerformanceUnit unit) noexcept {
  switch (unit) {
    case PerformanceUnit::KBPerSecond: return "kb_per_s";
    case PerformanceUnit::RequestsPerSecond: return "requests_per_s";
    case PerformanceUnit::TransactionsPerSecond: return "transactions_per_s";
    case PerformanceUnit::GigaFlopsPerSecond: return "gflops";
  }
  return "";
}

std::optional<PerformanceUnit> parse_performance_unit(std::string_view text) {
  for (auto unit :
       {PerformanceUnit::KBPerSecond, PerformanceUnit::RequestsPerSecond,
        PerformanceUnit::TransactionsPerSecond,
        PerformanceUnit::GigaFlopsPerSecond}) {
    if (text == to_string(unit)) return unit;
  }
  return std::nullopt;
}

PerformanceUnit unit_for(ApplicationCategory category) noexcept {
  switch (category) {
    case ApplicationCategory::Service: return PerformanceUnit::RequestsPerSecond;
    case ApplicationCategory::DataAnalysis: return PerformanceUnit::KBPerSecond;
    case ApplicationCategory::InteractiveRealTime:
      return PerformanceUnit::TransactionsPerSecond;
    case ApplicationCategory::HighPerformanceComputing:
      return PerformanceUnit::GigaFlopsPerSecond;
  }
  return PerformanceUnit::KBPerSecond;
}

PerformanceRate compute_performance(const ApplicationRun& run) {
  if (!work_matches(run.category, run.work)) {
    throw Error(ErrorKind::CategoryMismatch,
                "run '" + run.run_id + "' of category " +
                    std::string(to_string(run.category)) + " cannot report " +
                    std::string(work_type_name(run.work)));
  }
  if (!std::isfinite(run.start) || !std::isfinite(run.end) ||
      !(run.end > run.start)) {
    throw Error(ErrorKind::InvalidWindow,
                "run '" + run.run_id + "' has a non-positive duration");
  }
  const double duration = run.end - run.start;
  double work = static_cast<double>(work_count(run.work));
  if (std::holds_alternative<BytesProcessed>(run.work)) {
    work /= kBytesPerKilobyte;
  } else if (std::holds_alternative<FloatingPointOps>(run.work)) {
    work /= kFlopsPerGigaflop;
  }
  return {work / duration, unit_for(run.category)};
}

}  // namespace axpue
