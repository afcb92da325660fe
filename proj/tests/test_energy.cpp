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

#include <random>

#include "axpue/energy.hpp"
#include "axpue/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace axpue;
using axpue::testing::close_rel;
using axpue::testing::Knot;

namespace {

PowerTrace trace_of(const std::vector<Knot>& knots, std::string id = "dev") {
  std::vector<PowerTrace::Point> points;
  for (const auto& k : knots) points.push_back({k.t, k.w});
  return PowerTrace(std::move(id), std::move(points));
}

PowerTrace constant_trace(double watts, double start, double end, double step,
                          std::string id = "dev") {
  std::vector<PowerTrace::Point> points;
  for (double t = start; t <= end; t += step) points.push_back({t, watts});
  return PowerTrace(std::move(id), std::move(points));
}

const Error& expect_error(auto&& fn, Error& slot) {
  try {
    fn();
  } catch (const Error& e) {
    slot = e;
    return slot;
  }
  FAIL("expected an axpue::Error");
  return slot;
}

}  // namespace

TEST_CASE("constant power over 60 s integrates to 6000 J") {
  const auto trace = constant_trace(100.0, 0.0, 60.0, 1.0);
  CHECK(integrate_power(trace, 0.0, 60.0, 60.0) == 6000.0);
}

TEST_CASE("linear ramp from 0 W to 100 W over 10 s integrates to 500 J") {
  const auto trace = trace_of({{0.0, 0.0}, {10.0, 100.0}});
  CHECK(integrate_power(trace, 0.0, 10.0, 60.0) == 500.0);
}

TEST_CASE("window edges between samples are interpolated") {
  const auto trace = trace_of({{0.0, 0.0}, {10.0, 100.0}});
  // Power is 10*t; integral over [2, 6] = 5*(36 - 4) = 160.
  CHECK(integrate_power(trace, 2.0, 6.0, 60.0) == doctest::Approx(160.0).epsilon(1e-14));
}

TEST_CASE("window edges beyond the trace are held constant within max_gap") {
  const auto trace = trace_of({{10.0, 50.0}, {15.0, 50.0}, {20.0, 50.0}});
  CHECK(integrate_power(trace, 5.0, 25.0, 5.0) == 1000.0);
  Error slot(ErrorKind::ModelError, "");
  CHECK(expect_error([&] { integrate_power(trace, 4.0, 25.0, 5.0); }, slot).kind() ==
        ErrorKind::CoverageGap);
  CHECK(expect_error([&] { integrate_power(trace, 5.0, 26.0, 5.0); }, slot).kind() ==
        ErrorKind::CoverageGap);
}

TEST_CASE("single-sample trace extends in both directions") {
  const auto trace = trace_of({{100.0, 20.0}});
  CHECK(integrate_power(trace, 90.0, 110.0, 10.0) == 400.0);
}

TEST_CASE("integration errors") {
  Error slot(ErrorKind::ModelError, "");
  const auto trace = trace_of({{0.0, 1.0}, {10.0, 1.0}, {700.0, 1.0}, {710.0, 1.0}});

  SUBCASE("empty trace") {
    PowerTrace empty("dev", {});
    CHECK(expect_error([&] { integrate_power(empty, 0.0, 1.0, 60.0); }, slot).kind() ==
          ErrorKind::NoSamples);
  }
  SUBCASE("inverted window") {
    CHECK(expect_error([&] { integrate_power(trace, 5.0, 5.0, 60.0); }, slot).kind() ==
          ErrorKind::InvalidWindow);
    CHECK(expect_error([&] { average_power(1.0, 5.0, 1.0); }, slot).kind() ==
          ErrorKind::InvalidWindow);
  }
  SUBCASE("interior gap longer than max_gap") {
    const auto& e = expect_error([&] { integrate_power(trace, 0.0, 710.0, 60.0); }, slot);
    CHECK(e.kind() == ErrorKind::CoverageGap);
    CHECK(std::string(e.what()).find("t=10") != std::string::npos);
  }
  SUBCASE("window entirely inside a gap") {
    CHECK(expect_error([&] { integrate_power(trace, 100.0, 200.0, 60.0); }, slot).kind() ==
          ErrorKind::CoverageGap);
  }
  SUBCASE("gap outside the window is ignored") {
    CHECK(integrate_power(trace, 0.0, 10.0, 60.0) == 10.0);
    CHECK(integrate_power(trace, 700.0, 710.0, 60.0) == 10.0);
  }
  SUBCASE("gap exactly max_gap is tolerated") {
    CHECK(integrate_power(trace, 0.0, 710.0, 690.0) == 710.0);
  }
}

TEST_CASE("trace construction rejects unordered or negative samples") {
  CHECK_THROWS_AS(PowerTrace("d", {{1.0, 1.0}, {1.0, 2.0}}), Error);
  CHECK_THROWS_AS(PowerTrace("d", {{2.0, 1.0}, {1.0, 2.0}}), Error);
  CHECK_THROWS_AS(PowerTrace("d", {{1.0, -1.0}}), Error);
  CHECK_THROWS_AS(PowerTrace("", {{1.0, 1.0}}), Error);
}

TEST_CASE("average_power examples") {
  CHECK(average_power(6000.0, 0.0, 60.0) == 100.0);
  CHECK(average_power(0.0, 3.0, 7.5) == 0.0);
}

TEST_CASE("oracle: random piecewise-linear traces match a 1e6-step Riemann sum") {
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 10; ++i) {
    const auto knots = axpue::testing::random_knots(rng, 60);
    const auto trace = trace_of(knots);
    std::uniform_real_distribution<double> frac(0.0, 0.3);
    const double span = knots.back().t - knots.front().t;
    const double a = knots.front().t + frac(rng) * span;
    const double b = knots.back().t - frac(rng) * span;

    const double energy = integrate_power(trace, a, b, 60.0);
    const double oracle = axpue::testing::riemann_energy(knots, a, b);
    CHECK(close_rel(energy, oracle, 1e-6));
    CHECK(close_rel(average_power(energy, a, b), oracle / (b - a), 1e-6));
  }
}

TEST_CASE("property: integral is additive over an interior split") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto knots = axpue::testing::random_knots(rng, 20);
    const auto trace = trace_of(knots);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = knots.front().t;
    const double b = knots.back().t;
    const double m = a + (b - a) * (0.01 + 0.98 * u(rng));
    const double whole = integrate_power(trace, a, b, 60.0);
    const double split = integrate_power(trace, a, m, 60.0) + integrate_power(trace, m, b, 60.0);
    CHECK(close_rel(split, whole, 1e-9));
  }
}

TEST_CASE("property: scaling power scales energy") {
  std::mt19937_64 rng(12);
  for (double k : {0.5, 2.0, 10.0, 3.7}) {
    const auto knots = axpue::testing::random_knots(rng, 30);
    const auto trace = trace_of(knots);
    const double a = knots.front().t;
    const double b = knots.back().t;
    CHECK(close_rel(integrate_power(trace.scaled(k), a, b, 60.0),
                    k * integrate_power(trace, a, b, 60.0), 1e-12));
  }
}

TEST_CASE("property: average of constant power is that power") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> watts(0.0, 1e6);
  std::uniform_real_distribution<double> len(1.0, 1e5);
  for (int i = 0; i < 200; ++i) {
    const double p = watts(rng);
    const double end = len(rng);
    const auto trace = trace_of({{0.0, p}, {end / 3.0, p}, {end, p}});
    CHECK(close_rel(average_power(integrate_power(trace, 0.0, end, end), 0.0, end), p,
                    1e-12));
  }
}

TEST_CASE("category_energy reproduces the BigDataBench hour") {
  // 100.412 kW of IT and 147.323 - 100.412 = 46.911 kW of everything else.
  auto inventory = validate_inventory({{"it", DeviceCategory::ITEquipment, ""},
                                       {"rest", DeviceCategory::Cooling, ""}});
  const std::vector<PowerTrace> traces = {
      constant_trace(100412.0, 0.0, 3600.0, 60.0, "it"),
      constant_trace(46911.0, 0.0, 3600.0, 60.0, "rest")};
  const auto window = category_energy(traces, inventory, 0.0, 3600.0, 60.0);
  CHECK(close_rel(window.it_energy(), 361.4832e6, 1e-12));
  CHECK(close_rel(window.total_facility_energy(), 530.3628e6, 1e-12));
  CHECK(window.energy(DeviceCategory::PowerTransmission) == 0.0);
  CHECK(window.energy(DeviceCategory::Other) == 0.0);
}

TEST_CASE("category_energy sums devices per category against the oracle") {
  std::mt19937_64 rng(99);
  std::vector<PowerTrace> traces;
  std::vector<DeviceRecord> devices;
  double expected_it = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto id = "s" + std::to_string(i);
    const auto knots = axpue::testing::random_knots(rng, 60, -10.0, 0.5, 20.0);
    traces.push_back(trace_of(knots, id));
    devices.push_back({id, DeviceCategory::ITEquipment, ""});
    expected_it += axpue::testing::riemann_energy(knots, 0.0, 400.0);
  }
  traces.push_back(constant_trace(10.0, -10.0, 500.0, 10.0, "lights"));
  devices.push_back({"lights", DeviceCategory::Other, ""});
  const auto inventory = validate_inventory(devices);

  const auto window = category_energy(traces, inventory, 0.0, 400.0, 60.0);
  CHECK(close_rel(window.it_energy(), expected_it, 1e-6));
  CHECK(window.energy(DeviceCategory::Other) == doctest::Approx(4000.0).epsilon(1e-12));
  CHECK(window.energy(DeviceCategory::Cooling) == 0.0);
}

TEST_CASE("category_energy error paths carry the device id") {
  auto inventory = validate_inventory({{"it", DeviceCategory::ITEquipment, ""},
                                       {"crac", DeviceCategory::Cooling, ""}});
  Error slot(ErrorKind::ModelError, "");

  SUBCASE("unknown device") {
    const std::vector<PowerTrace> traces = {constant_trace(1.0, 0.0, 10.0, 1.0, "it"),
                                            constant_trace(1.0, 0.0, 10.0, 1.0, "crac"),
                                            constant_trace(1.0, 0.0, 10.0, 1.0, "ghost")};
    const auto& e = expect_error(
        [&] { category_energy(traces, inventory, 0.0, 10.0, 60.0); }, slot);
    CHECK(e.kind() == ErrorKind::UnknownDevice);
    CHECK(e.device_id() == std::string("ghost"));
  }
  SUBCASE("inventory device without telemetry") {
    const std::vector<PowerTrace> traces = {constant_trace(1.0, 0.0, 10.0, 1.0, "it")};
    const auto& e = expect_error(
        [&] { category_energy(traces, inventory, 0.0, 10.0, 60.0); }, slot);
    CHECK(e.kind() == ErrorKind::NoSamples);
    CHECK(e.device_id() == std::string("crac"));
  }
  SUBCASE("coverage gap is tagged") {
    const std::vector<PowerTrace> traces = {
        constant_trace(1.0, 0.0, 10.0, 1.0, "it"),
        trace_of({{0.0, 1.0}, {10.0, 1.0}}, "crac")};
    const auto& e = expect_error(
        [&] { category_energy(traces, inventory, 0.0, 10.0, 5.0); }, slot);
    CHECK(e.kind() == ErrorKind::CoverageGap);
    CHECK(e.device_id() == std::string("crac"));
  }
  SUBCASE("duplicate traces") {
    const std::vector<PowerTrace> traces = {constant_trace(1.0, 0.0, 10.0, 1.0, "it"),
                                            constant_trace(1.0, 0.0, 10.0, 1.0, "it")};
    CHECK(expect_error([&] { category_energy(traces, inventory, 0.0, 10.0, 60.0); }, slot)
              .kind() == ErrorKind::DuplicateDevice);
  }
}
