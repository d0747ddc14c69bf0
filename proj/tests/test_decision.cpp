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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bictx/decision.hpp"
#include "bictx/quantum.hpp"
#include "bictx/rng.hpp"
#include "test_util.hpp"

using namespace bictx;
using bictx_test::close;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kSqrt2m1 = std::numbers::sqrt2 - 1.0;   // 0.41421...
const double kLhsOptimal = 3.0 - 2.0 * std::numbers::sqrt2;  // 0.17157...

Behavior optimal_behavior() {
  return Behavior::from_means(kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2, 0.0);
}

Behavior deterministic_d1() {
  Behavior b = Behavior::from_means(1.0, 1.0, 1.0, 1.0, 1.0);
  b.mean_a = 1.0;
  b.mean_b = 1.0;
  b.tables = SettingTables{PairDistribution::point_mass(+1, +1),
                           PairDistribution::point_mass(+1, +1),
                           PairDistribution::point_mass(+1, +1)};
  return b;
}

Behavior deterministic_d2() {
  Behavior b = Behavior::from_means(1.0, -1.0, -1.0, 1.0, 1.0);
  b.mean_a = -1.0;
  b.mean_b = -1.0;
  b.tables = SettingTables{PairDistribution::point_mass(+1, -1),
                           PairDistribution::point_mass(-1, +1),
                           PairDistribution::point_mass(-1, -1)};
  return b;
}

Behavior random_behavior(rng::Stream& stream) {
  return Behavior::from_means(stream.uniform_symmetric(),
                              stream.uniform_symmetric(),
                              stream.uniform_symmetric(),
                              stream.uniform_symmetric(),
                              stream.uniform_symmetric());
}

double induced_mean_diff(const Behavior& b, const WitnessModel& w) {
  const auto m1 = moments_from_pair_distribution(w.mu1);
  const auto m2 = moments_from_pair_distribution(w.mu2);
  return std::max({std::abs(m1.mean_q - b.alpha1), std::abs(m1.mean_r - b.beta1),
                   std::abs(m2.mean_q - b.alpha2), std::abs(m2.mean_r - b.beta2),
                   std::abs(m1.corr_qr * m2.corr_qr - b.corr_ab)});
}

}  // namespace

TEST_CASE("bounds of reference behaviors") {
  SUBCASE("all-zero means give the full square") {
    const auto c = compute_bounds(Behavior::from_means(0, 0, 0, 0, 0));
    CHECK(c.l1 == -1.0);
    CHECK(c.r1 == 1.0);
    CHECK(c.l2 == -1.0);
    CHECK(c.r2 == 1.0);
  }
  SUBCASE("a deterministic alpha against an unbiased beta pins the bound to zero") {
    const auto c = compute_bounds(Behavior::from_means(1.0, 1.0, 0.0, 0.0, 0.0));
    CHECK(c.l1 == 0.0);
    CHECK(c.r1 == 0.0);
    CHECK(c.l2 == 0.0);
    CHECK(c.r2 == 0.0);
  }
  SUBCASE("the optimal state") {
    const auto c = compute_bounds(optimal_behavior());
    CHECK(close(c.l1, kSqrt2m1, 1e-15));
    CHECK(close(c.r1, 1.0, 1e-15));
    CHECK(close(c.l2, kSqrt2m1, 1e-15));
    CHECK(close(c.r2, 1.0, 1e-15));
  }
}

TEST_CASE("decide_single on the optimal-state behavior") {
  const auto rep = decide_single(optimal_behavior());
  CHECK(rep.verdict == Verdict::BiContextual);
  CHECK(close(rep.product_min, kLhsOptimal, 1e-15));  // (sqrt2-1)^2
  CHECK(close(rep.product_max, 1.0, 1e-15));
  CHECK(close(rep.single_lhs, kLhsOptimal, 1e-15));
  CHECK_FALSE(rep.sides.any());
  CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("decide_single on the deterministic behavior") {
  const auto rep = decide_single(deterministic_d1());
  CHECK(rep.verdict == Verdict::NonBiContextual);
  CHECK(rep.product_min == 1.0);
  CHECK(rep.product_max == 1.0);
  CHECK(rep.single_lhs == 0.0);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->c1 == 1.0);
  CHECK(rep.witness->c2 == 1.0);
  CHECK(rep.witness->mu1.pp == 1.0);
  CHECK(rep.witness->mu2.pp == 1.0);
}

TEST_CASE("decide_single on the super-quantum behavior") {
  const auto rep = decide_single(Behavior::from_means(1, 0, 0, 1, 1));
  CHECK(rep.verdict == Verdict::BiContextual);
  CHECK(rep.product_min == 0.0);
  CHECK(rep.product_max == 0.0);
  CHECK(rep.single_lhs == 1.0);
}

TEST_CASE("four sides on reference behaviors") {
  SUBCASE("optimal state violates all four") {
    CHECK_FALSE(decide_four_sides(optimal_behavior()).any());
  }
  SUBCASE("all-zero behavior satisfies the left side") {
    const auto s = decide_four_sides(Behavior::from_means(0, 0, 0, 0, 0));
    CHECK(s.left);
  }
  SUBCASE("the experimentally tested state violates all four") {
    // theta = pi/4, phi = 3pi/4: means (-1/sqrt2, 1/sqrt2, 1/sqrt2, -1/sqrt2),
    // bounds L = -1, R = 1-sqrt2; the ratio <AB>/L1 = 0 falls outside
    // [L2, R2] = [-1, 1-sqrt2].
    const auto b = Behavior::from_means(-kInvSqrt2, kInvSqrt2, kInvSqrt2,
                                        -kInvSqrt2, 0.0);
    const auto c = compute_bounds(b);
    CHECK(close(c.l1, -1.0, 1e-15));
    CHECK(close(c.r1, 1.0 - std::numbers::sqrt2, 1e-15));
    CHECK_FALSE(decide_four_sides(b).any());
    CHECK(close(decide_single(b).single_lhs, kLhsOptimal, 1e-15));
  }
}

TEST_CASE("necessary-only bound") {
  SUBCASE("super-quantum behavior violates it") {
    const auto r = necessary_bound_check(Behavior::from_means(1, 0, 0, 1, 1));
    CHECK(r.bound == 0.0);
    CHECK(r.violated);
  }
  SUBCASE("optimal state does not violate it, although bi-contextual") {
    // Regression pin: the necessary condition is strictly weaker than the
    // full criterion.
    const auto r = necessary_bound_check(optimal_behavior());
    CHECK(close(r.bound, 1.0, 1e-15));
    CHECK_FALSE(r.violated);
    CHECK(decide_single(optimal_behavior()).verdict == Verdict::BiContextual);
  }
  SUBCASE("all-zero behavior") {
    const auto r = necessary_bound_check(Behavior::from_means(0, 0, 0, 0, 0));
    CHECK(r.bound == 1.0);
    CHECK_FALSE(r.violated);
  }
}

TEST_CASE("necessary violation implies bi-contextual on random behaviors") {
  rng::Stream stream(3, 400);
  int violated = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto b = random_behavior(stream);
    if (necessary_bound_check(b).violated) {
      ++violated;
      CHECK(decide_single(b).verdict == Verdict::BiContextual);
    }
  }
  CHECK(violated > 100);
}

TEST_CASE("witness construction") {
  SUBCASE("deterministic behavior pins the corner") {
    const auto b = deterministic_d1();
    const auto w = build_witness(b, compute_bounds(b));
    CHECK(w.c1 == 1.0);
    CHECK(w.c2 == 1.0);
  }
  SUBCASE("all-zero behavior picks the origin") {
    const auto b = Behavior::from_means(0, 0, 0, 0, 0);
    const auto w = build_witness(b, compute_bounds(b));
    CHECK(w.c1 == 0.0);
    CHECK(w.c2 == 0.0);
    CHECK(close(w.mu1.pp, 0.25, 1e-15));
    CHECK(close(w.mu2.mm, 0.25, 1e-15));
  }
  SUBCASE("a feasible hyperbola point inside the rectangle") {
    // Bounds [-1/2, 1/2]^2, target product 0.2: the |c1|+|c2| minimizer is
    // |c1| = |c2| = sqrt(0.2), tie broken toward the lower-left corner.
    const auto b = Behavior::from_means(0.5, 0.0, 0.0, 0.5, 0.2);
    const auto bounds = compute_bounds(b);
    CHECK(close(bounds.l1, -0.5, 1e-15));
    CHECK(close(bounds.r1, 0.5, 1e-15));
    const auto w = build_witness(b, bounds);
    CHECK(close(w.c1, -std::sqrt(0.2), 1e-12));
    CHECK(close(w.c2, -std::sqrt(0.2), 1e-12));
    CHECK(close(w.c1 * w.c2, 0.2, 1e-12));
    CHECK(w.mu1.valid(1e-12));
    CHECK(w.mu2.valid(1e-12));
  }
  SUBCASE("calling on a bi-contextual behavior is a contract error") {
    const auto b = optimal_behavior();
    CHECK_THROWS_AS((void)build_witness(b, compute_bounds(b)), std::logic_error);
  }
}

TEST_CASE("every non-bi-contextual verdict carries a sound witness") {
  rng::Stream stream(99, 500);
  int witnessed = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto b = random_behavior(stream);
    const auto rep = decide_single(b);
    if (rep.verdict != Verdict::NonBiContextual) continue;
    ++witnessed;
    REQUIRE(rep.witness.has_value());
    const auto& w = *rep.witness;
    const auto c = rep.bounds;
    CHECK(w.c1 >= c.l1 - 1e-12);
    CHECK(w.c1 <= c.r1 + 1e-12);
    CHECK(w.c2 >= c.l2 - 1e-12);
    CHECK(w.c2 <= c.r2 + 1e-12);
    CHECK(w.mu1.valid(1e-12));
    CHECK(w.mu2.valid(1e-12));
    CHECK(induced_mean_diff(b, w) <= 1e-9);
  }
  CHECK(witnessed > 1000);
}

TEST_CASE("single inequality and four sides agree on random behaviors") {
  rng::Stream stream(11, 600);
  for (int i = 0; i < 100000; ++i) {
    const auto b = random_behavior(stream);
    const auto rep = decide_single(b);
    const auto sides = decide_four_sides(b);
    CHECK((rep.verdict == Verdict::NonBiContextual) == sides.any());
    CHECK(sides.as_array() == rep.sides.as_array());
  }
}

TEST_CASE("corner products are extremal over the rectangle") {
  rng::Stream stream(5, 700);
  for (int i = 0; i < 2000; ++i) {
    const auto bounds = compute_bounds(random_behavior(stream));
    const double corners[4] = {bounds.l1 * bounds.l2, bounds.l1 * bounds.r2,
                               bounds.r1 * bounds.l2, bounds.r1 * bounds.r2};
    const double min4 = *std::min_element(corners, corners + 4);
    const double max4 = *std::max_element(corners, corners + 4);
    constexpr int kGrid = 21;
    for (int a = 0; a < kGrid; ++a) {
      const double c1 = bounds.l1 + (bounds.r1 - bounds.l1) * a / (kGrid - 1);
      for (int b = 0; b < kGrid; ++b) {
        const double c2 = bounds.l2 + (bounds.r2 - bounds.l2) * b / (kGrid - 1);
        const double p = c1 * c2;
        CHECK(p >= min4 - 1e-12);
        CHECK(p <= max4 + 1e-12);
      }
    }
  }
}

TEST_CASE("mixing behaviors") {
  SUBCASE("the even mixture of the deterministic pair is super-quantum") {
    const auto mixed = mix_behaviors(deterministic_d1(), 0.5, deterministic_d2());
    CHECK(mixed.alpha1 == 1.0);
    CHECK(mixed.alpha2 == 0.0);
    CHECK(mixed.beta1 == 0.0);
    CHECK(mixed.beta2 == 1.0);
    CHECK(mixed.corr_ab == 1.0);
    REQUIRE(mixed.mean_a.has_value());
    CHECK(*mixed.mean_a == 0.0);
    // Observable-level source independence survives this particular mixture.
    CHECK(behavior_issues(mixed).empty());
  }
  SUBCASE("weight one returns the first behavior") {
    const auto b = optimal_behavior();
    const auto m = mix_behaviors(b, 1.0, deterministic_d1());
    CHECK(m.alpha1 == b.alpha1);
    CHECK(m.corr_ab == b.corr_ab);
  }
  SUBCASE("mixing zeros is zeros") {
    const auto z = Behavior::from_means(0, 0, 0, 0, 0);
    const auto m = mix_behaviors(z, 0.5, z);
    CHECK(m.alpha1 == 0.0);
    CHECK(m.corr_ab == 0.0);
  }
  SUBCASE("weights outside [0,1] are rejected") {
    const auto z = Behavior::from_means(0, 0, 0, 0, 0);
    CHECK_THROWS_AS((void)mix_behaviors(z, 1.5, z), std::invalid_argument);
    CHECK_THROWS_AS((void)mix_behaviors(z, -0.1, z), std::invalid_argument);
  }
}

TEST_CASE("the non-bi-contextual set is not convex") {
  const auto d1 = deterministic_d1();
  const auto d2 = deterministic_d2();
  const auto r1 = decide_single(d1);
  const auto r2 = decide_single(d2);
  CHECK(r1.verdict == Verdict::NonBiContextual);
  CHECK(r2.verdict == Verdict::NonBiContextual);
  CHECK(r1.witness.has_value());
  CHECK(r2.witness.has_value());
  // d2's witness is the deterministic assignment alpha=+1, beta=-1 on
  // source 1 and the mirror on source 2.
  CHECK(r2.witness->c1 == -1.0);
  CHECK(r2.witness->c2 == -1.0);
  CHECK(r2.witness->mu1.pm == 1.0);
  CHECK(r2.witness->mu2.mp == 1.0);

  const auto mixed = mix_behaviors(d1, 0.5, d2);
  const auto rm = decide_single(mixed);
  CHECK(rm.verdict == Verdict::BiContextual);
  CHECK(rm.single_lhs == 1.0);
}

TEST_CASE("six-variable joint distribution") {
  SUBCASE("quantum tables are recovered as marginals") {
    const double pi = std::acos(-1.0);
    rng::Stream stream(31, 800);
    for (int i = 0; i < 50; ++i) {
      const QubitState s1{stream.uniform() * pi / 2, stream.uniform() * 2 * pi};
      const QubitState s2{stream.uniform() * pi / 2, stream.uniform() * 2 * pi};
      const auto t = born_tables(s1, s2);
      const auto jpd = construct_jpd(t);
      CHECK(close(jpd.total(), 1.0, 1e-12));
      const auto ma = jpd.marginal_alpha();
      const auto mb = jpd.marginal_beta();
      const auto mj = jpd.marginal_joint();
      for (int q : {+1, -1})
        for (int r : {+1, -1}) {
          CHECK(close(ma.cell(q, r), t.alpha.cell(q, r), 1e-12));
          CHECK(close(mb.cell(q, r), t.beta.cell(q, r), 1e-12));
          CHECK(close(mj.cell(q, r), t.joint.cell(q, r), 1e-12));
        }
      // The delta liftings must be recovered too: mass only on A = a1*a2.
      const auto lifted = jpd.marginal_alpha_with_a();
      for (int a1 : {+1, -1})
        for (int a2 : {+1, -1})
          for (int A : {+1, -1}) {
            const std::size_t idx = (static_cast<std::size_t>(a1 < 0) << 2) |
                                    (static_cast<std::size_t>(a2 < 0) << 1) |
                                    static_cast<std::size_t>(A < 0);
            const double want = A == a1 * a2 ? t.alpha.cell(a1, a2) : 0.0;
            CHECK(close(lifted[idx], want, 1e-12));
          }
    }
  }
  SUBCASE("uniform tables give the uniform lifted product") {
    SettingTables t{PairDistribution::uniform(), PairDistribution::uniform(),
                    PairDistribution::uniform()};
    const auto jpd = construct_jpd(t);
    CHECK(close(jpd.total(), 1.0, 1e-15));
    for (int a1 : {+1, -1})
      for (int a2 : {+1, -1})
        for (int b1 : {+1, -1})
          for (int b2 : {+1, -1}) {
            CHECK(close(jpd.probability(a1, a2, b1, b2, a1 * a2, b1 * b2),
                        1.0 / 16.0, 1e-15));
            // Off-delta cells carry no mass.
            CHECK(jpd.probability(a1, a2, b1, b2, -a1 * a2, b1 * b2) == 0.0);
          }
  }
  SUBCASE("zero marginal cells are defined as zero") {
    SettingTables t{PairDistribution::point_mass(+1, -1),  // A = -1 surely
                    PairDistribution::point_mass(+1, +1),  // B = +1 surely
                    PairDistribution::point_mass(-1, +1)};
    const auto jpd = construct_jpd(t);
    CHECK(close(jpd.total(), 1.0, 1e-15));
    CHECK(jpd.probability(+1, -1, +1, +1, -1, +1) == 1.0);
  }
  SUBCASE("disturbing tables are rejected") {
    SettingTables t{PairDistribution::uniform(), PairDistribution::uniform(),
                    PairDistribution::point_mass(+1, +1)};
    CHECK_THROWS_AS((void)construct_jpd(t), NoDisturbanceError);
  }
}
