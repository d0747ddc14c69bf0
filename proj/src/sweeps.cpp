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

#include "bictx/sweeps.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bictx/parallel.hpp"
#include "bictx/rng.hpp"
#include "bictx/stats.hpp"

namespace bictx {

namespace {

double grid_value(double lo, double hi, int steps, int k) {
  if (k == 0) return lo;
  if (k == steps - 1) return hi;
  return lo + k * ((hi - lo) / static_cast<double>(steps - 1));
}

SweepRow evaluate_row(const SweepSpec& spec, int k) {
  const double param = grid_value(spec.lo, spec.hi, spec.steps, k);
  const double theta = spec.fixed == FixedParam::Theta ? spec.fixed_value : param;
  const double phi = spec.fixed == FixedParam::Phi ? spec.fixed_value : param;

  SweepRow row;
  row.param = param;

  Behavior b;
  if (spec.shots == 0) {
    b = ideal_behavior(theta, phi);
  } else {
    const QubitState s{theta, phi};
    const std::uint64_t row_seed =
        rng::derive_stream(spec.seed, static_cast<std::uint64_t>(k));
    CountTable counts;
    counts.alpha = sample_setting(s, s, Setting::AlphaLocal, spec.shots, row_seed);
    counts.beta = sample_setting(s, s, Setting::BetaLocal, spec.shots, row_seed);
    counts.joint = sample_setting(s, s, Setting::JointMS, spec.shots, row_seed);
    const auto est = estimate_behavior(counts);
    b = est.behavior;
    row.se = {est.alpha1.se, est.alpha2.se, est.beta1.se, est.beta2.se,
              est.corr_ab.se};
  }

  const auto rep = decide_single(b);
  row.l1 = rep.bounds.l1;
  row.r1 = rep.bounds.r1;
  row.l2 = rep.bounds.l2;
  row.r2 = rep.bounds.r2;
  row.corr_ab = b.corr_ab;
  row.single_lhs = rep.single_lhs;
  row.verdict = rep.verdict;

  const std::array<double, 4> dens = {rep.bounds.l1, rep.bounds.r1,
                                      rep.bounds.l2, rep.bounds.r2};
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(dens[i]) < kRatioDenominatorTol) {
      row.ratios[i] = std::numeric_limits<double>::quiet_NaN();
      row.undefined_ratio = true;
    } else {
      row.ratios[i] = b.corr_ab / dens[i] + 0.0;  // normalize -0 to +0
    }
  }
  return row;
}

void print_float(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);
  os << buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  if (!(spec.lo < spec.hi))
    throw std::invalid_argument("run_sweep: range must satisfy lo < hi");
  if (spec.steps < 2)
    throw std::invalid_argument("run_sweep: steps must be >= 2");
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i] = evaluate_row(spec, static_cast<int>(i));
  });
  return rows;
}

Behavior behavior_from_bloch(double x, double y, double z) {
  Behavior b;
  b.alpha1 = x;
  b.alpha2 = y;
  b.beta1 = y;
  b.beta2 = x;
  b.corr_ab = z * z;
  b.mean_a = x * y;
  b.mean_b = y * x;
  return b;
}

std::vector<RegionRow> run_region(const RegionSpec& spec, int threads) {
  std::vector<RegionRow> rows;
  if (spec.surface_only) {
    const int m = spec.surface_resolution;
    if (m < 2)
      throw std::invalid_argument("run_region: surface resolution must be >= 2");
    const double pi = std::acos(-1.0);
    rows.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
      const int i = static_cast<int>(idx) / m;  // polar index
      const int j = static_cast<int>(idx) % m;  // azimuthal index
      const double polar = pi * static_cast<double>(i) / (m - 1);
      const double azim = 2.0 * pi * static_cast<double>(j) / m;
      const double x = std::sin(polar) * std::cos(azim);
      const double y = std::sin(polar) * std::sin(azim);
      const double z = std::cos(polar);
      const auto rep = decide_single(behavior_from_bloch(x, y, z));
      rows[idx] = {x, y, z, rep.verdict, rep.single_lhs};
    });
    return rows;
  }

  const int n = spec.resolution;
  if (n < 2) throw std::invalid_argument("run_region: resolution must be >= 2");
  // Lattice (2i - (n-1))/(n-1): exactly symmetric under negation, so the
  // region symmetries can be checked point for point.
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    axis[static_cast<std::size_t>(i)] =
        static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);

  // One slab per x index; each slab collects its in-ball points.
  std::vector<std::vector<RegionRow>> slabs(static_cast<std::size_t>(n));
  parallel_for(slabs.size(), threads, [&](std::size_t ix) {
    auto& slab = slabs[ix];
    const double x = axis[ix];
    for (int iy = 0; iy < n; ++iy) {
      const double y = axis[static_cast<std::size_t>(iy)];
      if (x * x + y * y > 1.0) continue;
      for (int iz = 0; iz < n; ++iz) {
        const double z = axis[static_cast<std::size_t>(iz)];
        if (x * x + y * y + z * z > 1.0) continue;
        const auto rep = decide_single(behavior_from_bloch(x, y, z));
        slab.push_back({x, y, z, rep.verdict, rep.single_lhs});
      }
    }
  });
  std::size_t total = 0;
  for (const auto& s : slabs) total += s.size();
  rows.reserve(total);
  for (const auto& s : slabs) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     bool with_se) {
  os << "param,L1,R1,L2,R2,corrAB,ratio_L1,ratio_R1,ratio_L2,ratio_R2,"
        "single_lhs,verdict,undefined_ratio";
  if (with_se) os << ",se_alpha1,se_alpha2,se_beta1,se_beta2,se_corrAB";
  os << "\n";
  for (const auto& r : rows) {
    print_float(os, r.param);
    for (double v : {r.l1, r.r1, r.l2, r.r2, r.corr_ab}) {
      os << ',';
      print_float(os, v);
    }
    for (double v : r.ratios) {
      os << ',';
      print_float(os, v);
    }
    os << ',';
    print_float(os, r.single_lhs);
    os << ',' << to_string(r.verdict) << ',' << (r.undefined_ratio ? 1 : 0);
    if (with_se) {
      for (double v : r.se) {
        os << ',';
        print_float(os, v);
      }
    }
    os << '\n';
  }
}

void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows) {
  os << "x,y,z,verdict,single_lhs\n";
  for (const auto& r : rows) {
    print_float(os, r.x);
    os << ',';
    print_float(os, r.y);
    os << ',';
    print_float(os, r.z);
    os << ',' << to_string(r.verdict) << ',';
    print_float(os, r.single_lhs);
    os << '\n';
  }
}

}  // namespace bictx
