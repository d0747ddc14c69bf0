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

#include "bictx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bictx/parallel.hpp"
#include "bictx/rng.hpp"
#include "bictx/sweeps.hpp"

namespace bictx {

namespace {

void require_counts(const OutcomeCounts& c, Setting expected) {
  if (c.setting != expected)
    throw std::invalid_argument("count table: setting mismatch");
  if (c.shots < 2)
    throw std::invalid_argument("count table: each setting needs shots >= 2");
  const std::uint64_t sum = c.counts[0] + c.counts[1] + c.counts[2] + c.counts[3];
  if (sum != c.shots)
    throw std::invalid_argument("count table: counts do not sum to shots");
}

struct SettingMoments {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double corr = 0.0;
  double n = 0.0;
};

SettingMoments moments_of(const OutcomeCounts& c) {
  const double n = static_cast<double>(c.shots);
  const double pp = static_cast<double>(c.counts[0]);
  const double pm = static_cast<double>(c.counts[1]);
  const double mp = static_cast<double>(c.counts[2]);
  const double mm = static_cast<double>(c.counts[3]);
  return {(pp + pm - mp - mm) / n, (pp - pm + mp - mm) / n,
          (pp - pm - mp + mm) / n, n};
}

double mean_se(double mean, double n) {
  const double var = std::max(0.0, 1.0 - mean * mean);
  return std::sqrt(var / (n - 1.0));
}

PairDistribution frequencies(const OutcomeCounts& c) {
  const double n = static_cast<double>(c.shots);
  return {static_cast<double>(c.counts[0]) / n,
          static_cast<double>(c.counts[1]) / n,
          static_cast<double>(c.counts[2]) / n,
          static_cast<double>(c.counts[3]) / n};
}

struct RatioAccumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  std::uint64_t n = 0;

  void add(double v) {
    if (!std::isfinite(v)) return;
    sum += v;
    sumsq += v * v;
    ++n;
  }
  double stddev() const {
    if (n < 2) return 0.0;
    const double num = static_cast<double>(n);
    const double var = (sumsq - sum * sum / num) / (num - 1.0);
    return std::sqrt(std::max(0.0, var));
  }
};

// Decision quantities a bootstrap resample needs; witness construction is
// skipped.
struct LeanDecision {
  double l1, r1, l2, r2;
  double lhs;
  std::array<double, 4> ratios;
};

LeanDecision lean_decide(const Behavior& b) {
  const auto bounds = compute_bounds(b);
  const std::array<double, 4> corners = {bounds.l1 * bounds.l2, bounds.l1 * bounds.r2,
                                         bounds.r1 * bounds.l2, bounds.r1 * bounds.r2};
  const double lo = std::min(std::min(corners[0], corners[1]),
                             std::min(corners[2], corners[3]));
  const double hi = std::max(std::max(corners[0], corners[1]),
                             std::max(corners[2], corners[3]));
  LeanDecision out{bounds.l1, bounds.r1, bounds.l2, bounds.r2,
                   (b.corr_ab - lo) * (b.corr_ab - hi),
                   {}};
  const std::array<double, 4> dens = {bounds.l1, bounds.r1, bounds.l2, bounds.r2};
  for (std::size_t i = 0; i < 4; ++i)
    out.ratios[i] = std::abs(dens[i]) < kRatioDenominatorTol
                        ? std::numeric_limits<double>::quiet_NaN()
                        : b.corr_ab / dens[i] + 0.0;
  return out;
}

OutcomeCounts resample(const OutcomeCounts& c, const PairDistribution& freq,
                       rng::Stream& stream) {
  OutcomeCounts out;
  out.setting = c.setting;
  out.shots = c.shots;
  const auto p = freq.cells();
  for (std::uint64_t k = 0; k < c.shots; ++k)
    ++out.counts[static_cast<std::size_t>(stream.sample4(p))];
  return out;
}

}  // namespace

BehaviorEstimate estimate_behavior(const CountTable& c) {
  require_counts(c.alpha, Setting::AlphaLocal);
  require_counts(c.beta, Setting::BetaLocal);
  require_counts(c.joint, Setting::JointMS);

  const auto ma = moments_of(c.alpha);
  const auto mb = moments_of(c.beta);
  const auto mj = moments_of(c.joint);

  BehaviorEstimate est;
  est.behavior.alpha1 = ma.mean1;
  est.behavior.alpha2 = ma.mean2;
  est.behavior.beta1 = mb.mean1;
  est.behavior.beta2 = mb.mean2;
  est.behavior.corr_ab = mj.corr;
  est.behavior.mean_a = mj.mean1;
  est.behavior.mean_b = mj.mean2;
  SettingTables tables;
  tables.alpha = frequencies(c.alpha);
  tables.beta = frequencies(c.beta);
  tables.joint = frequencies(c.joint);
  est.behavior.tables = tables;

  est.alpha1 = {ma.mean1, mean_se(ma.mean1, ma.n)};
  est.alpha2 = {ma.mean2, mean_se(ma.mean2, ma.n)};
  est.beta1 = {mb.mean1, mean_se(mb.mean1, mb.n)};
  est.beta2 = {mb.mean2, mean_se(mb.mean2, mb.n)};
  est.corr_ab = {mj.corr, mean_se(mj.corr, mj.n)};
  est.mean_a = {mj.mean1, mean_se(mj.mean1, mj.n)};
  est.mean_b = {mj.mean2, mean_se(mj.mean2, mj.n)};

  // Identities that are exact for ideal statistics hold only statistically
  // for counts; flag deviations beyond six combined standard errors.
  const auto flag = [&est](const char* what, double lhs, double rhs,
                           double se) {
    const double slack = std::max(1e-9, 6.0 * se);
    if (std::abs(lhs - rhs) > slack) {
      std::ostringstream os;
      os << what << ": " << lhs << " vs " << rhs << " exceeds " << slack;
      est.warnings.push_back(os.str());
    }
  };
  const double se_prod_a = std::hypot(ma.mean2 * est.alpha1.se,
                                      ma.mean1 * est.alpha2.se) +
                           mean_se(ma.corr, ma.n);
  flag("source independence <A> = <alpha1><alpha2>", ma.corr,
       ma.mean1 * ma.mean2, se_prod_a);
  const double se_prod_b = std::hypot(mb.mean2 * est.beta1.se,
                                      mb.mean1 * est.beta2.se) +
                           mean_se(mb.corr, mb.n);
  flag("source independence <B> = <beta1><beta2>", mb.corr,
       mb.mean1 * mb.mean2, se_prod_b);
  flag("no-disturbance <A> local vs joint", ma.corr, mj.mean1,
       mean_se(ma.corr, ma.n) + mean_se(mj.mean1, mj.n));
  flag("no-disturbance <B> local vs joint", mb.corr, mj.mean2,
       mean_se(mb.corr, mb.n) + mean_se(mj.mean2, mj.n));
  return est;
}

UncertainReport propagate_uncertainty(const CountTable& c,
                                      std::uint64_t resamples,
                                      std::uint64_t seed, int threads) {
  if (resamples < 100)
    throw std::invalid_argument("propagate_uncertainty: resamples must be >= 100");

  UncertainReport rep;
  rep.estimate = estimate_behavior(c);
  rep.point = decide_single(rep.estimate.behavior);
  rep.resamples = resamples;
  rep.seed = seed;

  const auto freq_alpha = frequencies(c.alpha);
  const auto freq_beta = frequencies(c.beta);
  const auto freq_joint = frequencies(c.joint);

  std::vector<LeanDecision> draws(resamples);
  parallel_for(resamples, threads, [&](std::size_t r) {
    // Streams keyed by (seed, setting, resample) so the draw sequence is
    // independent of the worker count.
    rng::Stream sa(seed, 0, r + 1);
    rng::Stream sb(seed, 1, r + 1);
    rng::Stream sj(seed, 2, r + 1);
    CountTable boot;
    boot.alpha = resample(c.alpha, freq_alpha, sa);
    boot.beta = resample(c.beta, freq_beta, sb);
    boot.joint = resample(c.joint, freq_joint, sj);
    const auto a = moments_of(boot.alpha);
    const auto b = moments_of(boot.beta);
    const auto j = moments_of(boot.joint);
    draws[r] = lean_decide(
        Behavior::from_means(a.mean1, a.mean2, b.mean1, b.mean2, j.corr));
  });

  RatioAccumulator acc_l1, acc_r1, acc_l2, acc_r2, acc_lhs;
  std::array<RatioAccumulator, 4> acc_ratio;
  for (const auto& d : draws) {
    acc_l1.add(d.l1);
    acc_r1.add(d.r1);
    acc_l2.add(d.l2);
    acc_r2.add(d.r2);
    acc_lhs.add(d.lhs);
    for (std::size_t i = 0; i < 4; ++i) acc_ratio[i].add(d.ratios[i]);
  }

  const auto point = lean_decide(rep.estimate.behavior);
  rep.l1 = {point.l1, acc_l1.stddev()};
  rep.r1 = {point.r1, acc_r1.stddev()};
  rep.l2 = {point.l2, acc_l2.stddev()};
  rep.r2 = {point.r2, acc_r2.stddev()};
  rep.corr_ab = {rep.estimate.corr_ab.value, rep.estimate.corr_ab.se};
  rep.single_lhs = {point.lhs, acc_lhs.stddev()};
  for (std::size_t i = 0; i < 4; ++i) {
    rep.ratios[i].value = point.ratios[i];
    rep.ratios[i].defined = std::isfinite(point.ratios[i]);
    rep.ratios[i].se = acc_ratio[i].stddev();
    rep.ratios[i].finite_resamples = acc_ratio[i].n;
  }
  if (rep.single_lhs.se > 0.0) {
    rep.significance = rep.single_lhs.value / rep.single_lhs.se;
  } else {
    rep.significance = rep.single_lhs.value == 0.0
                           ? 0.0
                           : std::numeric_limits<double>::infinity();
  }
  return rep;
}

UncertainReport exact_report(const Behavior& b) {
  UncertainReport rep;
  rep.point = decide_single(b);
  rep.estimate.behavior = b;
  rep.estimate.alpha1 = {b.alpha1, 0.0};
  rep.estimate.alpha2 = {b.alpha2, 0.0};
  rep.estimate.beta1 = {b.beta1, 0.0};
  rep.estimate.beta2 = {b.beta2, 0.0};
  rep.estimate.corr_ab = {b.corr_ab, 0.0};
  rep.estimate.mean_a = {b.mean_a.value_or(b.alpha1 * b.alpha2), 0.0};
  rep.estimate.mean_b = {b.mean_b.value_or(b.beta1 * b.beta2), 0.0};
  const auto lean = lean_decide(b);
  rep.l1 = {lean.l1, 0.0};
  rep.r1 = {lean.r1, 0.0};
  rep.l2 = {lean.l2, 0.0};
  rep.r2 = {lean.r2, 0.0};
  rep.corr_ab = {b.corr_ab, 0.0};
  rep.single_lhs = {lean.lhs, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    rep.ratios[i].value = lean.ratios[i];
    rep.ratios[i].defined = std::isfinite(lean.ratios[i]);
    rep.ratios[i].se = 0.0;
    rep.ratios[i].finite_resamples = 0;
  }
  rep.significance = lean.lhs == 0.0 ? 0.0
                                     : std::numeric_limits<double>::infinity();
  return rep;
}

CountTable count_table_from_shot_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("shot CSV: empty input");
  // Tolerate trailing CR from Windows-edited files.
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting,o1,o2")
    throw std::invalid_argument("shot CSV: expected header 'setting,o1,o2'");

  CountTable table;
  table.alpha.setting = Setting::AlphaLocal;
  table.beta.setting = Setting::BetaLocal;
  table.joint.setting = Setting::JointMS;

  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string setting, o1, o2;
    if (!std::getline(row, setting, ',') || !std::getline(row, o1, ',') ||
        !std::getline(row, o2))
      throw std::invalid_argument("shot CSV: malformed row at line " +
                                  std::to_string(lineno));
    const auto outcome = [&lineno](const std::string& s) {
      if (s == "+1" || s == "1") return +1;
      if (s == "-1") return -1;
      throw std::invalid_argument("shot CSV: bad outcome at line " +
                                  std::to_string(lineno));
    };
    const int a = outcome(o1);
    const int b = outcome(o2);
    const std::size_t cell =
        static_cast<std::size_t>(a < 0) * 2 + static_cast<std::size_t>(b < 0);
    OutcomeCounts* target = nullptr;
    if (setting == "alpha") {
      target = &table.alpha;
    } else if (setting == "beta") {
      target = &table.beta;
    } else if (setting == "joint") {
      target = &table.joint;
    } else {
      throw std::invalid_argument("shot CSV: unknown setting at line " +
                                  std::to_string(lineno));
    }
    ++target->counts[cell];
    ++target->shots;
  }
  return table;
}

}  // namespace bictx
