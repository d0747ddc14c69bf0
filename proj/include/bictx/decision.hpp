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
#include <optional>

#include "bictx/behavior.hpp"
#include "bictx/pair_distribution.hpp"

namespace bictx {

/// Rectangle [L1,R1] x [L2,R2] of values the unmeasurable correlations
/// <alpha_i beta_i> may take, with L_i = |<alpha_i>+<beta_i>| - 1 and
/// R_i = 1 - |<alpha_i>-<beta_i>|. L_i <= R_i always holds because
/// |a+b| + |a-b| = 2 max(|a|,|b|) <= 2.
struct CorrelationBounds {
  double l1 = 0.0;
  double r1 = 0.0;
  double l2 = 0.0;
  double r2 = 0.0;
};

CorrelationBounds compute_bounds(const Behavior& b);

enum class Verdict { NonBiContextual, BiContextual };

const char* to_string(Verdict v);

/// Explicit factorized hidden-variable model certifying a NonBiContextual
/// verdict: chosen correlations c_i = <alpha_i beta_i> on the hyperbola
/// c1*c2 = <AB> inside the rectangle, together with the per-source
/// distributions mu_i over (alpha_i, beta_i) they induce.
struct WitnessModel {
  double c1 = 0.0;
  double c2 = 0.0;
  PairDistribution mu1;
  PairDistribution mu2;
};

/// Satisfaction flags of the four side inequalities (hyperbola crossing
/// the left/right/upper/lower edge of the rectangle). All four violated
/// is equivalent to the single product inequality failing.
struct SideResults {
  bool left = false;
  bool right = false;
  bool upper = false;
  bool lower = false;

  bool any() const { return left || right || upper || lower; }
  std::array<bool, 4> as_array() const { return {left, right, upper, lower}; }
};

struct DecisionConfig {
  /// Verdict tolerance on the single-inequality left-hand side; boundary
  /// cases (lhs == 0) classify as NonBiContextual, matching the non-strict
  /// "<= 0" form of the inequality.
  double tol_zero = 1e-12;
};

struct DecisionReport {
  Verdict verdict = Verdict::NonBiContextual;
  CorrelationBounds bounds;
  double product_min = 0.0;  // min of the four corner products
  double product_max = 0.0;  // max of the four corner products
  double single_lhs = 0.0;   // (<AB> - min)(<AB> - max)
  SideResults sides;
  double necessary_bound = 0.0;  // min_i max(|L_i|, |R_i|)
  std::optional<WitnessModel> witness;  // present iff NonBiContextual
};

/// Canonical decider: evaluates the single product inequality
/// (<AB> - min)(<AB> - max) <= 0 over the four corner products, the four
/// guarded side inequalities, and the necessary-only bound. Constructs a
/// witness model when the verdict is NonBiContextual.
DecisionReport decide_single(const Behavior& b, const DecisionConfig& cfg = {});

/// The four side inequalities alone, in a division-free guarded form.
/// The paper's ratio form divides by L_i/R_i, which is undefined at zero;
/// multiplying out gives a total, algebraically equivalent test.
SideResults decide_four_sides(const Behavior& b, const DecisionConfig& cfg = {});

struct NecessaryBoundResult {
  double bound = 0.0;
  bool violated = false;
};

/// Necessary-only condition: |<AB>| <= min_i max(|L_i|, |R_i|).
/// Violation implies BiContextual; the converse fails (e.g. on the optimal
/// quantum state).
NecessaryBoundResult necessary_bound_check(const Behavior& b);

/// Finds (c1, c2) on the hyperbola c1*c2 = <AB> inside the rectangle and
/// builds the per-source distributions. Among the feasible continuum the
/// point minimizing |c1|+|c2| is chosen, ties broken toward the lower-left
/// corner, so outputs are reproducible. Throws std::logic_error when called
/// on a BiContextual behavior.
WitnessModel build_witness(const Behavior& b, const CorrelationBounds& bounds,
                           const DecisionConfig& cfg = {});

/// Convex combination w*b1 + (1-w)*b2 of all means (and tables when both
/// present). Throws std::invalid_argument for w outside [0, 1].
Behavior mix_behaviors(const Behavior& b1, double w, const Behavior& b2);

/// Joint distribution over (alpha1, alpha2, beta1, beta2, A, B).
/// Cell index packs one bit per variable in that order, bit set for the
/// -1 outcome.
class SixVariableDistribution {
 public:
  static constexpr int kCells = 64;

  double probability(int a1, int a2, int b1, int b2, int A, int B) const {
    return cells_[index(a1, a2, b1, b2, A, B)];
  }
  double& at(int a1, int a2, int b1, int b2, int A, int B) {
    return cells_[index(a1, a2, b1, b2, A, B)];
  }
  double total() const;

  PairDistribution marginal_alpha() const;  // (alpha1, alpha2)
  PairDistribution marginal_beta() const;   // (beta1, beta2)
  PairDistribution marginal_joint() const;  // (A, B)

  /// p(alpha1, alpha2, A): index packs (a1, a2, A), bit set for -1.
  std::array<double, 8> marginal_alpha_with_a() const;
  std::array<double, 8> marginal_beta_with_b() const;

  static std::size_t index(int a1, int a2, int b1, int b2, int A, int B);

 private:
  std::array<double, kCells> cells_{};
};

/// Builds the six-variable joint distribution
///   p = p(a1,a2,A) p(b1,b2,B) p(A,B) / (p(A) p(B))
/// with the Kronecker-delta liftings p(a1,a2,A) = p(a1,a2) [A = a1*a2].
/// Requires tables that pass the no-disturbance check at `nd_tol` (throws
/// NoDisturbanceError otherwise). A zero marginal p(A=a) forces every cell
/// with A=a to zero; the quotient is defined as 0 there.
SixVariableDistribution construct_jpd(const SettingTables& t,
                                      double nd_tol = 1e-9);

}  // namespace bictx
