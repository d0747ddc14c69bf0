// Copyright 2026 The bictx Authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bictx/oracle.hpp"
#include "bictx/quantum.hpp"
#include "bictx/rng.hpp"
#include "test_util.hpp"

using namespace bictx;
using bictx_test::close;

namespace {
const double kPi = std::acos(-1.0);
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
// sin(2 theta*) = 2 sqrt2 / 3 at the verdict flip along phi = pi/4,
// from 1 - t^2 = (sqrt2 t - 1)^2.
const double kFlipLow = 0.5 * std::asin(2.0 * std::numbers::sqrt2 / 3.0);
}  // namespace

TEST_CASE("grid feasibility on reference behaviors") {
  SUBCASE("optimal state is infeasible") {
    const auto b =
        Behavior::from_means(kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2, 0.0);
    CHECK_FALSE(grid_feasibility(b).feasible);
  }
  SUBCASE("deterministic behavior is feasible at the corner") {
    const auto r = grid_feasibility(Behavior::from_means(1, 1, 1, 1, 1));
    CHECK(r.feasible);
    CHECK(r.c1 == 1.0);
    CHECK(r.c2 == 1.0);
  }
  SUBCASE("all-zero behavior is feasible on the axis") {
    const auto r = grid_feasibility(Behavior::from_means(0, 0, 0, 0, 0));
    CHECK(r.feasible);
    CHECK(r.c1 == 0.0);
  }
  SUBCASE("super-quantum behavior is infeasible") {
    CHECK_FALSE(grid_feasibility(Behavior::from_means(1, 0, 0, 1, 1)).feasible);
  }
}

TEST_CASE("grid oracle agrees with the analytic decider outside the band") {
  rng::Stream stream(17, 1000);
  OracleConfig cfg;
  cfg.grid_points = 2001;  // keep the unit test quick; acceptance runs 1e5 x 10001
  const double band = 1e-4;
  int outside = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto b = Behavior::from_means(
        stream.uniform_symmetric(), stream.uniform_symmetric(),
        stream.uniform_symmetric(), stream.uniform_symmetric(),
        stream.uniform_symmetric());
    const auto rep = decide_single(b);
    const auto grid = grid_feasibility(b, cfg);
    if (std::abs(rep.single_lhs) >= band) {
      ++outside;
      CHECK(grid.feasible == (rep.verdict == Verdict::NonBiContextual));
      if (grid.feasible) {
        const auto bounds = rep.bounds;
        CHECK(grid.c1 >= bounds.l1 - 1e-9);
        CHECK(grid.c1 <= bounds.r1 + 1e-9);
        CHECK(close(grid.c1 * grid.c2, b.corr_ab, 1e-6));
      }
    }
  }
  CHECK(outside > 4000);
}

TEST_CASE("deterministic strategy enumeration") {
  SUBCASE("deterministic behavior decomposes to point masses") {
    const auto d = enumerate_deterministic(Behavior::from_means(1, 1, 1, 1, 1));
    REQUIRE(d.has_value());
    CHECK(d->weights1 == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});
    CHECK(d->weights2 == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});
  }
  SUBCASE("super-quantum behavior has no decomposition") {
    CHECK_FALSE(enumerate_deterministic(Behavior::from_means(1, 0, 0, 1, 1)));
  }
  SUBCASE("all-zero behavior decomposes uniformly") {
    const auto d = enumerate_deterministic(Behavior::from_means(0, 0, 0, 0, 0));
    REQUIRE(d.has_value());
    for (double w : d->weights1) CHECK(close(w, 0.25, 1e-12));
    for (double w : d->weights2) CHECK(close(w, 0.25, 1e-12));
  }
}

TEST_CASE("enumeration succeeds exactly on non-bi-contextual mean-grid behaviors") {
  const std::vector<double> grid = {-1.0, -0.5, -kInvSqrt2, 0.0,
                                    0.5,  kInvSqrt2, 1.0};
  int nbc = 0, bc = 0;
  for (double a1 : grid)
    for (double a2 : grid)
      for (double b1 : grid)
        for (double b2 : grid)
          for (double t : grid) {
            const auto b = Behavior::from_means(a1, a2, b1, b2, t);
            const bool expect_nbc =
                decide_single(b).verdict == Verdict::NonBiContextual;
            const auto d = enumerate_deterministic(b);
            CHECK(d.has_value() == expect_nbc);
            (expect_nbc ? nbc : bc) += 1;
          }
  CHECK(nbc > 1000);
  CHECK(bc > 1000);
}

TEST_CASE("bisection locates the verdict flips along phi = pi/4") {
  SUBCASE("lower flip") {
    const double t = bisect_violation_boundary(kPi / 4, 0.3, kPi / 4);
    CHECK(close(std::sin(2 * t), 2.0 * std::numbers::sqrt2 / 3.0, 1e-8));
    CHECK(close(t, kFlipLow, 1e-8));
    // The verdict really flips across the located point.
    const auto lo = decide_single(ideal_behavior(t - 1e-7, kPi / 4)).verdict;
    const auto hi = decide_single(ideal_behavior(t + 1e-7, kPi / 4)).verdict;
    CHECK(lo != hi);
  }
  SUBCASE("mirror flip") {
    const double t = bisect_violation_boundary(kPi / 4, kPi / 4, 1.4);
    CHECK(close(t, kPi / 2 - kFlipLow, 1e-8));  // 0.95532...
  }
  SUBCASE("a bracket with equal verdicts is a precondition error") {
    // Along phi = 0 the single-inequality value is 4 s (1-s)^2 with
    // s = sin(2 theta): strictly positive on (0, pi/4) and (pi/4, pi/2),
    // so any bracket inside one of those sub-intervals has the same verdict
    // at both ends.
    CHECK_THROWS_AS(
        (void)bisect_violation_boundary(0.0, 0.3, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)bisect_violation_boundary(0.0, 0.9, 1.4), std::invalid_argument);
  }
}

TEST_CASE("phi = 0 theta-sweep follows 4 s (1-s)^2") {
  // Dense confirmation of the closed form used above.
  for (int k = 1; k < 60; ++k) {
    const double theta = k * (kPi / 2) / 60.0;
    const double s = std::sin(2 * theta);
    const auto rep = decide_single(ideal_behavior(theta, 0.0));
    CHECK(close(rep.single_lhs, 4.0 * s * (1.0 - s) * (1.0 - s), 1e-9));
  }
}
