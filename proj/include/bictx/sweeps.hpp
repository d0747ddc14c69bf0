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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bictx/decision.hpp"
#include "bictx/quantum.hpp"

namespace bictx {

enum class FixedParam { Theta, Phi };

/// One-parameter family of symmetric product states: either theta is fixed
/// and phi varies over [lo, hi], or the other way around. shots == 0 means
/// ideal (exact) statistics; otherwise each point is sampled with a
/// per-row stream derived from (seed, row index).
struct SweepSpec {
  FixedParam fixed = FixedParam::Theta;
  double fixed_value = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 181;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Denominators closer to zero than this carry the undefined-ratio marker
/// instead of a ratio value (such points sit at the "infinity points" a
/// plot would omit).
inline constexpr double kRatioDenominatorTol = 1e-9;

struct SweepRow {
  double param = 0.0;
  double l1 = 0.0, r1 = 0.0, l2 = 0.0, r2 = 0.0;
  double corr_ab = 0.0;
  /// <AB>/L1, <AB>/R1, <AB>/L2, <AB>/R2; NaN when the denominator is
  /// within kRatioDenominatorTol of zero.
  std::array<double, 4> ratios{};
  bool undefined_ratio = false;
  double single_lhs = 0.0;
  Verdict verdict = Verdict::NonBiContextual;
  /// Standard errors of (alpha1, alpha2, beta1, beta2, corrAB); all zero
  /// for ideal sweeps.
  std::array<double, 5> se{};
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

/// Bloch-vector scan of rho (x) rho classifications: the full ball on a
/// uniform per-axis lattice (points with |r| <= 1), or the pure-state
/// sphere on an angular grid. The ball lattice is symmetric under
/// coordinate negation by construction, so the scenario's symmetries hold
/// exactly, point for point.
struct RegionSpec {
  int resolution = 101;          // lattice points per Bloch axis (ball)
  bool surface_only = false;
  int surface_resolution = 256;  // angular grid per angle (sphere)
};

struct RegionRow {
  double x = 0.0, y = 0.0, z = 0.0;
  Verdict verdict = Verdict::NonBiContextual;
  double single_lhs = 0.0;
};

/// Behavior of rho (x) rho for Bloch vector (x, y, z) under the
/// MsCompatible assignment: means (x, y, y, x), corr_AB = z^2.
Behavior behavior_from_bloch(double x, double y, double z);

std::vector<RegionRow> run_region(const RegionSpec& spec, int threads = 1);

/// CSV emission. Floats are written with 17 significant digits so values
/// round-trip exactly; undefined ratios print as nan. Column order is part
/// of the interface and spelled out in the README.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     bool with_se);
void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows);

}  // namespace bictx
