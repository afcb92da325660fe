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

// Test-only reference computations. Nothing here calls into the library's
// integration or metric code; the point is to check it independently.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace axpue::testing {

struct Knot {
  double t;
  double w;
};

/// Piecewise-linear power, flat outside the knots. Linear scan on purpose.
inline double piecewise_power(const std::vector<Knot>& knots, double t) {
  if (t <= knots.front().t) return knots.front().w;
  if (t >= knots.back().t) return knots.back().w;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (t >= knots[i].t && t <= knots[i + 1].t) {
      const double span = knots[i + 1].t - knots[i].t;
      return knots[i].w + (knots[i + 1].w - knots[i].w) * (t - knots[i].t) / span;
    }
  }
  return knots.back().w;
}

/// Midpoint Riemann sum with `steps` equal cells. The knot cursor only moves
/// forward, so the cost is O(steps + knots).
inline double riemann_energy(const std::vector<Knot>& knots, double start, double end,
                             std::size_t steps = 1'000'000) {
  const long double h = (static_cast<long double>(end) - start) / steps;
  long double sum = 0.0L;
  std::size_t seg = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(start + (i + 0.5L) * h);
    double p;
    if (t <= knots.front().t) {
      p = knots.front().w;
    } else if (t >= knots.back().t) {
      p = knots.back().w;
    } else {
      while (seg + 1 < knots.size() && knots[seg + 1].t < t) ++seg;
      const auto& a = knots[seg];
      const auto& b = knots[seg + 1];
      p = a.w + (b.w - a.w) * (t - a.t) / (b.t - a.t);
    }
    sum += p;
  }
  return static_cast<double>(sum * h);
}

/// Random trace: strictly increasing times with gaps in [gap_lo, gap_hi],
/// powers in [0, max_watts].
inline std::vector<Knot> random_knots(std::mt19937_64& rng, std::size_t count,
                                      double t0 = 0.0, double gap_lo = 0.5,
                                      double gap_hi = 30.0, double max_watts = 500.0) {
  std::uniform_real_distribution<double> gap(gap_lo, gap_hi);
  std::uniform_real_distribution<double> watts(0.0, max_watts);
  std::vector<Knot> knots;
  double t = t0;
  for (std::size_t i = 0; i < count; ++i) {
    knots.push_back({t, watts(rng)});
    t += gap(rng);
  }
  return knots;
}

inline bool close_rel(double actual, double expected, double rel) {
  return std::abs(actual - expected) <= rel * std::max(std::abs(expected), 1e-300);
}

/// Trapezoid over the sample intervals fully inside [start, end]; exact for
/// windows aligned with sample times.
inline double trapezoid_aligned(const std::vector<Knot>& knots, double start, double end) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i].t >= start && knots[i + 1].t <= end) {
      sum += 0.5 * (knots[i].w + knots[i + 1].w) * (knots[i + 1].t - knots[i].t);
    }
  }
  return sum;
}

/// Temporary directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("axpue-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace axpue::testing
