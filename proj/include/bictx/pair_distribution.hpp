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
#include <variant>

namespace bictx {

/// Probability table of two +/-1 outcomes. Cell order everywhere in this
/// library is (+,+), (+,-), (-,+), (-,-).
struct PairDistribution {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double sum() const { return pp + pm + mp + mm; }
  double mean_first() const { return pp + pm - mp - mm; }
  double mean_second() const { return pp - pm + mp - mm; }
  double correlation() const { return pp - pm - mp + mm; }

  std::array<double, 4> cells() const { return {pp, pm, mp, mm}; }
  double cell(int q, int r) const;          // q, r in {+1, -1}
  void set_cell(int q, int r, double v);

  /// Entries non-negative and summing to 1 within `sum_tol`.
  bool valid(double sum_tol = 1e-12) const;

  static PairDistribution uniform() { return {0.25, 0.25, 0.25, 0.25}; }
  static PairDistribution point_mass(int q, int r);
};

/// Produced instead of a distribution when the moment triple forces a
/// negative cell. Negativity is itself the bi-contextuality witness, so it
/// is a first-class value rather than an error.
struct NegativityCertificate {
  int q = 0;             // outcome labels of the offending cell, each +/-1
  int r = 0;
  double value = 0.0;    // the (most) negative entry
};

using PairDistributionResult =
    std::variant<PairDistribution, NegativityCertificate>;

/// Evaluates p(q,r) = (1 + q<Q> + r<R> + qr<QR>)/4. If any cell is below
/// -neg_tol the most negative cell is reported as a certificate; cells in
/// [-neg_tol, 0) are clamped to zero. All inputs must lie in [-1, 1];
/// values outside throw std::domain_error.
PairDistributionResult pair_distribution_from_moments(double mean_q,
                                                      double mean_r,
                                                      double corr_qr,
                                                      double neg_tol = 0.0);

struct Moments {
  double mean_q = 0.0;
  double mean_r = 0.0;
  double corr_qr = 0.0;
};

/// Inverse of pair_distribution_from_moments; exact up to rounding.
Moments moments_from_pair_distribution(const PairDistribution& d);

/// Non-negativity condition: a distribution with the given moments exists
/// iff |<Q>+<R>| - 1 <= <QR> <= 1 - |<Q>-<R>|.
bool moments_admit_distribution(double mean_q, double mean_r, double corr_qr);

}  // namespace bictx
