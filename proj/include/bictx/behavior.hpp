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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bictx/pair_distribution.hpp"
#include "bictx/tolerances.hpp"

namespace bictx {

/// The three measurable setting tables of the scenario:
/// p(alpha1,alpha2), p(beta1,beta2) and p(A,B), where A and B are the
/// product quantities evaluated in the joint setting.
struct SettingTables {
  PairDistribution alpha;
  PairDistribution beta;
  PairDistribution joint;

  bool valid(double sum_tol = 1e-12) const {
    return alpha.valid(sum_tol) && beta.valid(sum_tol) && joint.valid(sum_tol);
  }
};

/// Observable statistics of the three-setting scenario. Operations that
/// need the full tables state that as a precondition; the decision
/// inequalities themselves consume only the five stored numbers.
struct Behavior {
  double alpha1 = 0.0;   // <alpha_1>
  double alpha2 = 0.0;   // <alpha_2>
  double beta1 = 0.0;    // <beta_1>
  double beta2 = 0.0;    // <beta_2>
  double corr_ab = 0.0;  // <A B>

  std::optional<double> mean_a;  // <A>
  std::optional<double> mean_b;  // <B>
  std::optional<SettingTables> tables;

  static Behavior from_means(double a1, double a2, double b1, double b2,
                             double corr) {
    Behavior b;
    b.alpha1 = a1;
    b.alpha2 = a2;
    b.beta1 = b1;
    b.beta2 = b2;
    b.corr_ab = corr;
    return b;
  }
};

/// Returns the list of invariant violations (empty when valid):
/// means inside [-1,1]; tables valid and consistent with the stored means;
/// <A> = <alpha_1><alpha_2> (and the B analogue) when those means are
/// present. Supplied data breaking the product identity is rejected rather
/// than silently accepted, since the whole analysis assumes independent
/// sources.
std::vector<std::string> behavior_issues(const Behavior& b,
                                         const Tolerances& tol = {});

/// Throws std::invalid_argument listing all violations.
void validate_behavior(const Behavior& b, const Tolerances& tol = {});

/// Per-parity deviations between the A-marginal computed from the alpha
/// table and from the joint table (and the B analogue).
struct NoDisturbanceReport {
  double dev_a_plus = 0.0;
  double dev_a_minus = 0.0;
  double dev_b_plus = 0.0;
  double dev_b_minus = 0.0;
  double tolerance = 0.0;

  double max_deviation() const;
  bool pass() const { return max_deviation() <= tolerance; }
  std::string describe() const;
};

/// Checks sum_{a1*a2=a} p(a1,a2) = sum_B p(A=a,B) for a=+/-1 and the
/// beta/B analogue.
NoDisturbanceReport check_no_disturbance(const SettingTables& t,
                                         double tol = 1e-9);

class NoDisturbanceError : public std::runtime_error {
 public:
  explicit NoDisturbanceError(NoDisturbanceReport report)
      : std::runtime_error(report.describe()), report_(report) {}
  const NoDisturbanceReport& report() const { return report_; }

 private:
  NoDisturbanceReport report_;
};

/// Fills all means (including <A>, <B>, taken from the joint table) from a
/// valid table triple. Throws NoDisturbanceError if the tables disturb.
Behavior behavior_from_tables(const SettingTables& t,
                              const Tolerances& tol = {});

}  // namespace bictx
