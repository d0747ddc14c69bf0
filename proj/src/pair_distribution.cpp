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

#include "bictx/pair_distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace bictx {

double PairDistribution::cell(int q, int r) const {
  if (q > 0) return r > 0 ? pp : pm;
  return r > 0 ? mp : mm;
}

void PairDistribution::set_cell(int q, int r, double v) {
  if (q > 0) {
    (r > 0 ? pp : pm) = v;
  } else {
    (r > 0 ? mp : mm) = v;
  }
}

bool PairDistribution::valid(double sum_tol) const {
  return pp >= 0.0 && pm >= 0.0 && mp >= 0.0 && mm >= 0.0 &&
         std::abs(sum() - 1.0) <= sum_tol;
}

PairDistribution PairDistribution::point_mass(int q, int r) {
  PairDistribution d;
  d.set_cell(q, r, 1.0);
  return d;
}

PairDistributionResult pair_distribution_from_moments(double mean_q,
                                                      double mean_r,
                                                      double corr_qr,
                                                      double neg_tol) {
  const auto in_range = [](double v) { return v >= -1.0 && v <= 1.0; };
  if (!in_range(mean_q) || !in_range(mean_r) || !in_range(corr_qr))
    throw std::domain_error("pair_distribution_from_moments: moments must lie in [-1, 1]");

  PairDistribution d;
  int worst_q = 0;
  int worst_r = 0;
  double worst = 0.0;
  for (int q : {+1, -1}) {
    for (int r : {+1, -1}) {
      const double cell = 0.25 * (1.0 + q * mean_q + r * mean_r + q * r * corr_qr);
      if (cell < worst) {
        worst = cell;
        worst_q = q;
        worst_r = r;
      }
      d.set_cell(q, r, cell);
    }
  }
  if (worst < -neg_tol) return NegativityCertificate{worst_q, worst_r, worst};
  if (worst < 0.0) {
    // Rounding-level dust only; clamp so downstream validity holds.
    for (int q : {+1, -1})
      for (int r : {+1, -1})
        if (d.cell(q, r) < 0.0) d.set_cell(q, r, 0.0);
  }
  return d;
}

Moments moments_from_pair_distribution(const PairDistribution& d) {
  return {d.mean_first(), d.mean_second(), d.correlation()};
}

bool moments_admit_distribution(double mean_q, double mean_r, double corr_qr) {
  return std::abs(mean_q + mean_r) - 1.0 <= corr_qr &&
         corr_qr <= 1.0 - std::abs(mean_q - mean_r);
}

}  // namespace bictx
