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
#include <optional>
#include <string>
#include <vector>

#include "bictx/decision.hpp"
#include "bictx/quantum.hpp"

namespace bictx {

/// Raw per-setting outcome counts, either from the sampler or from a real
/// experiment.
struct CountTable {
  OutcomeCounts alpha;
  OutcomeCounts beta;
  OutcomeCounts joint;
};

struct MeanEstimate {
  double value = 0.0;
  double se = 0.0;
};

/// Point estimates with standard errors. The SE of a mean m of +/-1
/// outcomes over n shots is sqrt((1 - m^2)/(n - 1)).
struct BehaviorEstimate {
  Behavior behavior;  // empirical means, frequency tables attached
  MeanEstimate alpha1, alpha2, beta1, beta2;
  MeanEstimate corr_ab, mean_a, mean_b;
  /// Non-fatal diagnostics: statistically significant source-dependence or
  /// disturbance in the supplied counts.
  std::vector<std::string> warnings;
};

/// Empirical means and standard errors from counts. Each setting needs
/// shots >= 2 and counts summing to its shot total (std::invalid_argument
/// otherwise). Consistency checks that are exact identities for ideal data
/// (source independence, no-disturbance) are applied at a statistical
/// tolerance here and reported as warnings, not failures.
BehaviorEstimate estimate_behavior(const CountTable& c);

struct UncertainQuantity {
  double value = 0.0;
  double se = 0.0;
};

struct RatioEstimate {
  double value = 0.0;  // NaN when undefined at the point estimate
  double se = 0.0;
  bool defined = false;
  std::uint64_t finite_resamples = 0;
};

/// Point estimates of all decision quantities plus bootstrap standard
/// errors. significance = single_lhs / SE(single_lhs); with SE == 0 it is
/// 0 for a zero value and infinite otherwise.
struct UncertainReport {
  DecisionReport point;
  BehaviorEstimate estimate;
  UncertainQuantity l1, r1, l2, r2;
  UncertainQuantity corr_ab;
  std::array<RatioEstimate, 4> ratios{};  // <AB>/L1, /R1, /L2, /R2
  UncertainQuantity single_lhs;
  double significance = 0.0;
  std::uint64_t resamples = 0;
  std::uint64_t seed = 0;
};

/// Nonparametric bootstrap: each setting's counts are resampled
/// multinomially (stream derived from seed, setting and resample index, so
/// results are identical for any worker count), the decision quantities
/// recomputed per resample, and SEs taken as resample standard deviations.
/// Ratio resamples with near-zero denominators are skipped and counted.
/// resamples must be >= 100.
UncertainReport propagate_uncertainty(const CountTable& c,
                                      std::uint64_t resamples,
                                      std::uint64_t seed, int threads = 1);

/// Report for exactly known statistics: all standard errors zero,
/// resamples zero. significance is 0 for a zero single_lhs and infinite
/// otherwise (serialized as null).
UncertainReport exact_report(const Behavior& b);

/// Parses the per-shot CSV format: header "setting,o1,o2", one row per
/// shot with setting in {alpha, beta, joint} and outcomes +1/-1.
/// Aggregation to counts is lossless for this analysis.
CountTable count_table_from_shot_csv(std::istream& is);

}  // namespace bictx
