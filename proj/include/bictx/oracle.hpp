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
#include <optional>

#include "bictx/behavior.hpp"
#include "bictx/decision.hpp"

namespace bictx {

/// Brute-force verifiers kept deliberately independent of the analytic
/// corner argument: a grid search for the hyperbola-rectangle intersection,
/// an exhaustive deterministic-strategy decomposition, and bisection for
/// verdict boundaries.
struct OracleConfig {
  int grid_points = 10001;       // per axis
  double tolerance = 1e-9;       // slack on interval membership
  double bisection_tol = 1e-10;  // bracket width at termination
};

struct GridFeasibility {
  bool feasible = false;
  double c1 = 0.0;  // witness point when found
  double c2 = 0.0;
};

/// Scans c1 over a uniform grid on [L1,R1], checking <AB>/c1 against
/// [L2 - tol, R2 + tol]; c1 = 0 is handled separately (feasible iff
/// <AB> = 0 within tol and 0 lies in [L1,R1]); the symmetric c2 scan runs
/// as a cross-check. Grid endpoints are exact, so edge crossings are never
/// missed.
GridFeasibility grid_feasibility(const Behavior& b, const OracleConfig& cfg = {});

/// Non-negative weights over the 16 product-deterministic strategies
/// (alpha_i, beta_i) in {+/-1}^2 per source, factorized as
/// w1(alpha1,beta1) * w2(alpha2,beta2), reproducing all five means.
/// Weight order per source: (+,+), (+,-), (-,+), (-,-).
struct DeterministicDecomposition {
  std::array<double, 4> weights1{};
  std::array<double, 4> weights2{};
};

/// Solves for the factorized weights via the witness construction and
/// verifies them by direct re-summation over all 16 strategies; returns
/// nullopt when no decomposition exists (BiContextual behavior).
std::optional<DeterministicDecomposition> enumerate_deterministic(
    const Behavior& b);

/// Locates the theta where the decide_single verdict flips along a
/// theta-sweep at fixed phi (symmetric product states). The verdicts at
/// theta_lo and theta_hi must differ (std::invalid_argument otherwise);
/// multi-flip intervals must be pre-split by a coarse scan.
double bisect_violation_boundary(double phi, double theta_lo, double theta_hi,
                                 const OracleConfig& cfg = {});

}  // namespace bictx
