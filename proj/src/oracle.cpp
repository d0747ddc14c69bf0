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

#include "bictx/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "bictx/quantum.hpp"

namespace bictx {

namespace {

// Scans the first axis of [lo1,hi1] x [lo2,hi2] and tests t/c1 against the
// second interval. Endpoints are forced exact so edge crossings are hit.
bool scan_axis(double t, double lo1, double hi1, double lo2, double hi2,
               int points, double tol, double& out1, double& out2) {
  const int n = lo1 == hi1 ? 1 : points;
  const double h = n > 1 ? (hi1 - lo1) / static_cast<double>(n - 1) : 0.0;
  for (int k = 0; k < n; ++k) {
    const double c1 = k == 0 ? lo1 : (k == n - 1 ? hi1 : lo1 + k * h);
    if (c1 == 0.0) continue;  // the degenerate axis is handled separately
    const double ratio = t / c1;
    if (ratio >= lo2 - tol && ratio <= hi2 + tol) {
      out1 = c1;
      out2 = std::min(std::max(ratio, lo2), hi2);
      return true;
    }
  }
  return false;
}

}  // namespace

GridFeasibility grid_feasibility(const Behavior& b, const OracleConfig& cfg) {
  if (cfg.grid_points < 3)
    throw std::invalid_argument("grid_feasibility: grid_points must be >= 3");
  const auto bounds = compute_bounds(b);
  const double t = b.corr_ab;
  GridFeasibility out;

  // c_i = 0 solves c1*c2 = t only for t = 0, in which case the other
  // correlation is free inside its interval.
  if (std::abs(t) <= cfg.tolerance) {
    if (bounds.l1 <= 0.0 && 0.0 <= bounds.r1) {
      out.feasible = true;
      out.c1 = 0.0;
      out.c2 = std::min(std::max(0.0, bounds.l2), bounds.r2);
      return out;
    }
    if (bounds.l2 <= 0.0 && 0.0 <= bounds.r2) {
      out.feasible = true;
      out.c1 = std::min(std::max(0.0, bounds.l1), bounds.r1);
      out.c2 = 0.0;
      return out;
    }
  }

  if (scan_axis(t, bounds.l1, bounds.r1, bounds.l2, bounds.r2, cfg.grid_points,
                cfg.tolerance, out.c1, out.c2)) {
    out.feasible = true;
    return out;
  }
  // Symmetric scan over c2 as a cross-check for crossings on the horizontal
  // edges.
  double c2 = 0.0, c1 = 0.0;
  if (scan_axis(t, bounds.l2, bounds.r2, bounds.l1, bounds.r1, cfg.grid_points,
                cfg.tolerance, c2, c1)) {
    out.feasible = true;
    out.c1 = c1;
    out.c2 = c2;
    return out;
  }
  return out;
}

std::optional<DeterministicDecomposition> enumerate_deterministic(
    const Behavior& b) {
  const auto report = decide_single(b);
  if (report.verdict == Verdict::BiContextual) return std::nullopt;

  // The witness distributions over (alpha_i, beta_i) are exactly the
  // factorized weights over the 16 product-deterministic strategies.
  const WitnessModel& w = *report.witness;
  DeterministicDecomposition d;
  d.weights1 = w.mu1.cells();
  d.weights2 = w.mu2.cells();

  // Verify by direct re-summation over all 16 strategies.
  const std::array<int, 2> signs = {+1, -1};
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, t = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int al1 = signs[static_cast<std::size_t>(i / 2)];
    const int be1 = signs[static_cast<std::size_t>(i % 2)];
    const double w1 = d.weights1[static_cast<std::size_t>(i)];
    for (int j = 0; j < 4; ++j) {
      const int al2 = signs[static_cast<std::size_t>(j / 2)];
      const int be2 = signs[static_cast<std::size_t>(j % 2)];
      const double w2 = d.weights2[static_cast<std::size_t>(j)];
      const double p = w1 * w2;
      a1 += p * al1;
      a2 += p * al2;
      b1 += p * be1;
      b2 += p * be2;
      t += p * (al1 * al2 * be1 * be2);
    }
  }
  const double worst = std::max(
      {std::abs(a1 - b.alpha1), std::abs(a2 - b.alpha2),
       std::abs(b1 - b.beta1), std::abs(b2 - b.beta2), std::abs(t - b.corr_ab)});
  if (worst > 1e-9)
    throw std::logic_error(
        "enumerate_deterministic: decomposition fails re-summation");
  return d;
}

double bisect_violation_boundary(double phi, double theta_lo, double theta_hi,
                                 const OracleConfig& cfg) {
  const auto verdict_at = [phi](double theta) {
    return decide_single(ideal_behavior(theta, phi)).verdict;
  };
  Verdict vlo = verdict_at(theta_lo);
  Verdict vhi = verdict_at(theta_hi);
  if (vlo == vhi)
    throw std::invalid_argument(
        "bisect_violation_boundary: same verdict at both bracket ends");
  double lo = theta_lo, hi = theta_hi;
  while (hi - lo > cfg.bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    if (verdict_at(mid) == vlo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bictx
