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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "axpue/error.hpp"
#include "axpue/metrics.hpp"
#include "axpue/simulator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axpue;
using axpue::testing::close_rel;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an axpue::Error");
  return ErrorKind::ModelError;
}

EnergyWindow window_from_kw(double it_kw, double total_kw, double seconds) {
  return EnergyWindow(0.0, seconds,
                      {0.0, 0.0, it_kw * 1000.0 * seconds,
                       (total_kw - it_kw) * 1000.0 * seconds});
}

RunInput run_input(const std::string& id, ApplicationCategory category, double start,
                   double end, double it_kw, double rate) {
  const PerformanceUnit unit = unit_for(category);
  WorkMeasure work = BytesProcessed{1};
  switch (category) {
    case ApplicationCategory::Service: work = RequestsAnswered{1}; break;
    case ApplicationCategory::InteractiveRealTime: work = TransactionsCompleted{1}; break;
    case ApplicationCategory::HighPerformanceComputing: work = FloatingPointOps{1}; break;
    case ApplicationCategory::DataAnalysis: break;
  }
  return {.run = {id, category, start, end, work, {id + "-it"}},
          .it_energy = it_kw * 1000.0 * (end - start),
          .performance = {rate, unit}};
}

/// Random valid inputs: k runs, each with its own window, all inside the
/// report window and together using less IT energy than it.
MetricInputs random_inputs(std::mt19937_64& rng, bool mixed_units = false) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> kw(0.05, 200.0);
  std::uniform_real_distribution<double> overhead(0.0, 1.5);
  std::uniform_real_distribution<double> rate(0.0, 1e5);
  std::uniform_real_distribution<double> length(1.0, 5000.0);
  const int runs = count(rng);
  MetricInputs inputs{.window = EnergyWindow(0.0, 1.0, {0, 0, 1, 0})};
  double t = 0.0;
  double run_energy = 0.0;
  for (int i = 0; i < runs; ++i) {
    const double len = length(rng);
    auto category = ApplicationCategory::DataAnalysis;
    if (mixed_units && i % 2 == 1) category = ApplicationCategory::Service;
    auto input = run_input("r" + std::to_string(i), category, t, t + len, kw(rng), rate(rng));
    const double it = input.it_energy;
    const double over = it * overhead(rng);
    input.run_window = EnergyWindow(t, t + len, {over * 0.2, over * 0.5, it, over * 0.3});
    run_energy += it;
    t += len;
    inputs.runs.push_back(std::move(input));
  }
  inputs.window = EnergyWindow(0.0, t, {run_energy * 0.05, run_energy * 0.3,
                                        run_energy * 1.1, run_energy * 0.02});
  return inputs;
}

}  // namespace

TEST_CASE("PUE of simple windows") {
  CHECK(compute_pue(EnergyWindow(0, 1, {10, 40, 100, 0})) == doctest::Approx(1.5));
  CHECK(compute_pue(EnergyWindow(0, 1, {0, 0, 100, 0})) == 1.0);
  CHECK(kind_of([] { compute_pue(EnergyWindow(0, 1, {1, 1, 0, 1})); }) ==
        ErrorKind::ZeroITEnergy);
}

TEST_CASE("ApPUE and AoPUE of the reference rows") {
  for (const auto& row : paper_table()) {
    const auto unit = row.workload == "Linpack" ? PerformanceUnit::GigaFlopsPerSecond
                                                : PerformanceUnit::KBPerSecond;
    const PerformanceRate rate{row.performance, unit};
    const auto appue = compute_appue(rate, row.it_power_kw);
    const auto aopue = compute_aopue(rate, row.total_facility_power_kw);
    CHECK(appue.unit == unit);
    CHECK(std::abs(appue.value - row.appue) <= 1e-3);
    CHECK(std::abs(aopue.value - row.aopue) <= 1e-3);
    CHECK(std::abs(row.total_facility_power_kw / row.it_power_kw - row.pue) <= 1e-3);
  }
}

TEST_CASE("ApPUE and AoPUE reject non-positive power") {
  const PerformanceRate rate{1.0, PerformanceUnit::KBPerSecond};
  CHECK(kind_of([&] { compute_appue(rate, 0.0); }) == ErrorKind::ZeroITPower);
  CHECK(kind_of([&] { compute_aopue(rate, -1.0); }) == ErrorKind::ZeroFacilityPower);
}

TEST_CASE("weights for two runs") {
  const std::vector<double> powers{92.122, 92.331};
  const auto weights = compute_weights(powers);
  REQUIRE(weights.size() == 2);
  CHECK(weights[0] == doctest::Approx(0.499434).epsilon(1e-6));
  CHECK(weights[1] == doctest::Approx(0.500566).epsilon(1e-6));
  CHECK(std::abs(weights[0] + weights[1] - 1.0) <= 1e-12);

  CHECK(kind_of([] { compute_weights(std::vector<double>{}); }) == ErrorKind::NoRuns);
  CHECK(kind_of([] { compute_weights(std::vector<double>{0.0, 0.0}); }) ==
        ErrorKind::ZeroITPower);
  CHECK(kind_of([] { compute_weights(std::vector<double>{1.0, -1.0}); }) ==
        ErrorKind::InvalidSample);
}

TEST_CASE("aggregate ApPUE") {
  const std::vector<Efficiency> appues{{17.2394, PerformanceUnit::KBPerSecond},
                                       {269.866, PerformanceUnit::KBPerSecond}};
  const std::vector<double> half{0.5, 0.5};
  CHECK(aggregate_appue(appues, half).value == doctest::Approx(143.5527));

  const std::vector<double> one{1.0};
  CHECK(kind_of([&] { aggregate_appue(appues, one); }) == ErrorKind::ShapeMismatch);
  const std::vector<Efficiency> mixed{{1.0, PerformanceUnit::KBPerSecond},
                                      {1.0, PerformanceUnit::GigaFlopsPerSecond}};
  CHECK(kind_of([&] { aggregate_appue(mixed, half); }) == ErrorKind::UnitMismatch);
  const std::vector<double> bad{0.5, 0.6};
  CHECK(kind_of([&] { aggregate_appue(appues, bad); }) == ErrorKind::InvalidSample);
}

TEST_CASE("verify_identity") {
  CHECK(verify_identity(269.866, 1.502, 269.866 / 1.502));
  CHECK(verify_identity(0.0, 1.2, 0.0));
  CHECK_FALSE(verify_identity(269.866, 1.502, 179.0));
  CHECK_FALSE(verify_identity(1.0, 0.0, 1.0));
}

TEST_CASE("build_report over the reference rows") {
  for (const auto& row : paper_table()) {
    const double seconds = 3600.0;
    const auto category = row.workload == "Linpack"
                              ? ApplicationCategory::HighPerformanceComputing
                              : ApplicationCategory::DataAnalysis;
    MetricInputs inputs{
        .window = window_from_kw(row.it_power_kw, row.total_facility_power_kw, seconds)};
    inputs.runs.push_back(
        run_input(row.workload, category, 0.0, seconds, row.it_power_kw, row.performance));
    const auto report = build_report(inputs);
    REQUIRE(report.rows.size() == 1);
    CAPTURE(row.workload);
    CHECK(std::abs(report.pue - row.pue) <= 1e-3);
    CHECK(std::abs(report.rows[0].appue - row.appue) <= 1e-3);
    CHECK(std::abs(report.rows[0].aopue - row.aopue) <= 1e-3);
    CHECK(report.rows[0].weight == 1.0);
    CHECK(*report.weighted_appue == report.rows[0].appue);
    CHECK(report_is_consistent(report));
  }
}

TEST_CASE("report without runs has PUE only") {
  MetricInputs inputs{.window = EnergyWindow(0, 10, {1, 2, 10, 0})};
  const auto report = build_report(inputs);
  CHECK(report.pue == doctest::Approx(1.3));
  CHECK(report.rows.empty());
  CHECK_FALSE(report.weighted_appue.has_value());
  CHECK(report.warnings.empty());
}

TEST_CASE("build_report rejects run energy beyond the window") {
  MetricInputs inputs{.window = EnergyWindow(0, 10, {0, 0, 10, 0})};
  inputs.runs.push_back(run_input("a", ApplicationCategory::DataAnalysis, 0, 10, 1.0, 1.0));
  CHECK(kind_of([&] { build_report(inputs); }) == ErrorKind::InvalidRun);
}

TEST_CASE("mixed units drop the aggregate and warn") {
  std::mt19937_64 rng(11);
  auto inputs = random_inputs(rng, true);
  while (inputs.runs.size() < 2) inputs = random_inputs(rng, true);
  const auto report = build_report(inputs);
  CHECK_FALSE(report.common_unit().has_value());
  CHECK_FALSE(report.weighted_appue.has_value());
  CHECK_FALSE(report.aggregated_aopue.has_value());
  CHECK(report.warnings.size() == 1);
  CHECK(report_is_consistent(report));
}

TEST_CASE("property: report matches a brute-force recomputation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inputs = random_inputs(rng);
    const auto report = build_report(inputs);
    const auto& w = inputs.window.energies();
    const double pue = (w[0] + w[1] + w[2] + w[3]) / w[2];
    CHECK(close_rel(report.pue, pue, 1e-12));

    double power_sum = 0.0;
    std::vector<double> powers;
    for (const auto& input : inputs.runs) {
      powers.push_back(input.it_energy / (input.run.end - input.run.start) / 1000.0);
      power_sum += powers.back();
    }
    double weighted = 0.0;
    for (std::size_t i = 0; i < inputs.runs.size(); ++i) {
      const auto& input = inputs.runs[i];
      const auto& e = input.run_window->energies();
      const double run_pue = (e[0] + e[1] + e[2] + e[3]) / e[2];
      const auto& row = report.rows[i];
      CHECK(close_rel(row.it_power_kw, powers[i], 1e-12));
      CHECK(close_rel(row.pue, run_pue, 1e-12));
      CHECK(close_rel(row.appue, input.performance.value / powers[i], 1e-12));
      CHECK(close_rel(row.aopue, input.performance.value / (powers[i] * run_pue), 1e-9));
      CHECK(close_rel(row.weight, powers[i] / power_sum, 1e-12));
      weighted += row.appue * powers[i] / power_sum;
    }
    CHECK(close_rel(*report.weighted_appue, weighted, 1e-9));
    CHECK(close_rel(*report.aggregated_aopue, weighted / pue, 1e-9));
  }
}

TEST_CASE("property: weights sum to one and the aggregate is convex") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto report = build_report(random_inputs(rng));
    double sum = 0.0;
    double lo = report.rows.front().appue;
    double hi = lo;
    for (const auto& row : report.rows) {
      sum += row.weight;
      lo = std::min(lo, row.appue);
      hi = std::max(hi, row.appue);
      CHECK(verify_identity(row.appue, row.pue, row.aopue));
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(*report.weighted_appue >= lo);
    CHECK(*report.weighted_appue <= hi);
    CHECK(report.pue >= 1.0);
  }
}

TEST_CASE("property: scaling every power by k keeps PUE and divides ApPUE by k") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inputs = random_inputs(rng);
    const auto base = build_report(inputs);
    for (double k : {0.5, 2.0, 10.0}) {
      MetricInputs scaled = inputs;
      auto scale = [k](const EnergyWindow& w) {
        auto e = w.energies();
        for (auto& x : e) x *= k;
        return EnergyWindow(w.start(), w.end(), e);
      };
      scaled.window = scale(inputs.window);
      for (auto& input : scaled.runs) {
        input.it_energy *= k;
        input.run_window = scale(*input.run_window);
      }
      const auto report = build_report(scaled);
      CHECK(close_rel(report.pue, base.pue, 1e-9));
      for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(close_rel(report.rows[i].appue, base.rows[i].appue / k, 1e-9));
        CHECK(close_rel(report.rows[i].aopue, base.rows[i].aopue / k, 1e-9));
      }
    }
  }
}

TEST_CASE("compute_report end to end on traces") {
  auto inventory = validate_inventory({{"s1", DeviceCategory::ITEquipment, ""},
                                       {"s2", DeviceCategory::ITEquipment, ""},
                                       {"crac", DeviceCategory::Cooling, ""}});
  std::vector<PowerTrace> traces{
      PowerTrace("crac", {{0, 100}, {50, 100}, {100, 100}}),
      PowerTrace("s1", {{0, 200}, {50, 200}, {100, 200}}),
      PowerTrace("s2", {{0, 300}, {50, 300}, {100, 300}}),
  };
  std::vector<ApplicationRun> runs{
      {"a", ApplicationCategory::DataAnalysis, 0, 50, BytesProcessed{1'000'000}, {"s1"}},
      {"b", ApplicationCategory::DataAnalysis, 0, 100, BytesProcessed{3'000'000}, {"s2"}},
  };
  const auto report = compute_report(traces, inventory, runs, {});
  CHECK(report.window.start() == 0.0);
  CHECK(report.window.end() == 100.0);
  CHECK(report.pue == doctest::Approx(1.2));
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].it_power_kw == doctest::Approx(0.2));
  CHECK(report.rows[0].performance.value == doctest::Approx(20.0));
  CHECK(report.rows[0].appue == doctest::Approx(100.0));
  CHECK(report.rows[1].appue == doctest::Approx(100.0));
  CHECK(report.rows[0].weight == doctest::Approx(0.4));
  CHECK(report.provenance.max_gap_s == 60.0);

  SUBCASE("concurrent runs may not share a device") {
    runs[1].attributed_devices = {"s1"};
    try {
      compute_report(traces, inventory, runs, {});
      FAIL("expected SharedDeviceConflict");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SharedDeviceConflict);
      CHECK(e.device_id() == std::string("s1"));
    }
  }
  SUBCASE("sequential runs may share a device") {
    runs[0].end = 50;
    runs[1] = {"b", ApplicationCategory::DataAnalysis, 50, 100, BytesProcessed{1}, {"s1"}};
    CHECK_NOTHROW(compute_report(traces, inventory, runs, {}));
  }
  SUBCASE("runs must lie in an explicit window") {
    CHECK(kind_of([&] {
            compute_report(traces, inventory, runs, {.window = std::pair{0.0, 60.0}});
          }) == ErrorKind::InvalidWindow);
  }
  SUBCASE("duplicate run ids") {
    runs[1].run_id = "a";
    CHECK(kind_of([&] { compute_report(traces, inventory, runs, {}); }) ==
          ErrorKind::InvalidRun);
  }
}
