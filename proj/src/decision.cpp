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

#include "bictx/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bictx {

namespace {

struct Corners {
  // products at (L1,L2), (L1,R2), (R1,L2), (R1,R2)
  double ll, lr, rl, rr;
  double min4, max4;
};

Corners corner_products(const CorrelationBounds& b) {
  Corners c{};
  c.ll = b.l1 * b.l2;
  c.lr = b.l1 * b.r2;
  c.rl = b.r1 * b.l2;
  c.rr = b.r1 * b.r2;
  c.min4 = std::min(std::min(c.ll, c.lr), std::min(c.rl, c.rr));
  c.max4 = std::max(std::max(c.ll, c.lr), std::max(c.rl, c.rr));
  return c;
}

bool interval_hit(double t, double p, double q, double tol) {
  return t >= std::min(p, q) - tol && t <= std::max(p, q) + tol;
}

// Raw per-edge membership. The product over an edge is monotone, so its
// range is spanned by the two corner products of that edge.
SideResults raw_sides(double t, const Corners& c, double tol) {
  SideResults s;
  s.left = interval_hit(t, c.ll, c.lr, tol);   // edge c1 = L1
  s.right = interval_hit(t, c.rl, c.rr, tol);  // edge c1 = R1
  s.upper = interval_hit(t, c.lr, c.rr, tol);  // edge c2 = R2
  s.lower = interval_hit(t, c.ll, c.rl, tol);  // edge c2 = L2
  return s;
}

// The side flags and the product verdict are algebraically equivalent;
// floats can disagree only inside the tol_zero boundary band. Normalize so
// "at least one side satisfied" always matches the verdict: on the
// NonBiContextual boundary mark the nearest edge, on BiContextual clear
// all flags.
SideResults reconcile_sides(double t, const Corners& c, bool nbc,
                            SideResults s) {
  if (!nbc) return SideResults{};
  if (s.any()) return s;
  const auto dist = [t](double p, double q) {
    const double lo = std::min(p, q), hi = std::max(p, q);
    return t < lo ? lo - t : (t > hi ? t - hi : 0.0);
  };
  const std::array<double, 4> d = {dist(c.ll, c.lr), dist(c.rl, c.rr),
                                   dist(c.lr, c.rr), dist(c.ll, c.rl)};
  const auto best =
      static_cast<int>(std::min_element(d.begin(), d.end()) - d.begin());
  s.left = best == 0;
  s.right = best == 1;
  s.upper = best == 2;
  s.lower = best == 3;
  return s;
}

struct Candidate {
  double c1 = 0.0;
  double c2 = 0.0;
  bool ok = false;
};

// Better under the objective |c1|+|c2|, ties toward the lower-left corner.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.ok) return true;
  const double oa = std::abs(a.c1) + std::abs(a.c2);
  const double ob = std::abs(b.c1) + std::abs(b.c2);
  if (oa != ob) return oa < ob;
  if (a.c1 != b.c1) return a.c1 < b.c1;
  return a.c2 < b.c2;
}

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

}  // namespace

const char* to_string(Verdict v) {
  return v == Verdict::NonBiContextual ? "NonBiContextual" : "BiContextual";
}

CorrelationBounds compute_bounds(const Behavior& b) {
  CorrelationBounds out;
  out.l1 = std::abs(b.alpha1 + b.beta1) - 1.0;
  out.r1 = 1.0 - std::abs(b.alpha1 - b.beta1);
  out.l2 = std::abs(b.alpha2 + b.beta2) - 1.0;
  out.r2 = 1.0 - std::abs(b.alpha2 - b.beta2);
  return out;
}

SideResults decide_four_sides(const Behavior& b, const DecisionConfig& cfg) {
  const auto bounds = compute_bounds(b);
  const auto c = corner_products(bounds);
  const double t = b.corr_ab;
  const double lhs = (t - c.min4) * (t - c.max4);
  const bool nbc = lhs <= cfg.tol_zero;
  return reconcile_sides(t, c, nbc, raw_sides(t, c, cfg.tol_zero));
}

NecessaryBoundResult necessary_bound_check(const Behavior& b) {
  const auto bounds = compute_bounds(b);
  const double m1 = std::max(std::abs(bounds.l1), std::abs(bounds.r1));
  const double m2 = std::max(std::abs(bounds.l2), std::abs(bounds.r2));
  NecessaryBoundResult out;
  out.bound = std::min(m1, m2);
  out.violated = std::abs(b.corr_ab) > out.bound;
  return out;
}

WitnessModel build_witness(const Behavior& b, const CorrelationBounds& bounds,
                           const DecisionConfig& cfg) {
  const auto c = corner_products(bounds);
  const double t = b.corr_ab;
  if ((t - c.min4) * (t - c.max4) > cfg.tol_zero)
    throw std::logic_error(
        "build_witness: behavior is bi-contextual, no model exists");

  Candidate best;

  if (std::abs(t) <= cfg.tol_zero) {
    // Hyperbola degenerates to the axes: set one correlation to zero on an
    // axis crossing the rectangle, the other as close to zero as allowed.
    if (bounds.l1 <= 0.0 && 0.0 <= bounds.r1) {
      Candidate cand{0.0, clamp(0.0, bounds.l2, bounds.r2), true};
      if (better(cand, best)) best = cand;
    }
    if (bounds.l2 <= 0.0 && 0.0 <= bounds.r2) {
      Candidate cand{clamp(0.0, bounds.l1, bounds.r1), 0.0, true};
      if (better(cand, best)) best = cand;
    }
  }
  if (!best.ok && t != 0.0) {
    // One branch per sign of c1. On a branch |c1| |c2| = |t|, so the
    // objective is u + |t|/u in u = |c1|, convex with minimum at sqrt|t|;
    // clamp that to the feasible u-interval.
    const double inf = std::numeric_limits<double>::infinity();
    for (int sign1 : {+1, -1}) {
      const double s2 = (t > 0.0 ? sign1 : -sign1);
      // c1 range on this branch
      double lo1 = sign1 > 0 ? std::max(bounds.l1, 0.0) : -inf;
      double hi1 = sign1 > 0 ? inf : std::min(bounds.r1, 0.0);
      lo1 = std::max(lo1, bounds.l1);
      hi1 = std::min(hi1, bounds.r1);
      if (lo1 > hi1) continue;
      // c2 range with the required sign
      double lo2 = s2 > 0 ? std::max(bounds.l2, 0.0) : bounds.l2;
      double hi2 = s2 > 0 ? bounds.r2 : std::min(bounds.r2, 0.0);
      if (lo2 > hi2) continue;
      // Image of c1 = t/c2 over [lo2, hi2] \ {0}
      const double e1 = lo2 != 0.0 ? t / lo2 : (s2 > 0 ? inf : -inf);
      const double e2 = hi2 != 0.0 ? t / hi2 : (s2 > 0 ? inf : -inf);
      const double jlo = std::min(e1, e2);
      const double jhi = std::max(e1, e2);
      const double klo = std::max(lo1, jlo);
      const double khi = std::min(hi1, jhi);
      if (klo > khi) continue;
      const double mlo = sign1 > 0 ? klo : -khi;
      const double mhi = sign1 > 0 ? khi : -klo;
      const double mag = clamp(std::sqrt(std::abs(t)), mlo, mhi);
      const double c1 = sign1 > 0 ? mag : -mag;
      if (c1 == 0.0) continue;
      const double c2 = clamp(t / c1, bounds.l2, bounds.r2);
      Candidate cand{c1, c2, true};
      if (better(cand, best)) best = cand;
    }
  }
  if (!best.ok) {
    // Boundary verdicts can leave the exact hyperbola outside the rectangle
    // by a rounding-sized gap; the nearest corner then realizes the product
    // within the witness tolerance.
    const std::array<std::array<double, 2>, 4> corners = {
        {{bounds.l1, bounds.l2},
         {bounds.l1, bounds.r2},
         {bounds.r1, bounds.l2},
         {bounds.r1, bounds.r2}}};
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& p : corners) {
      const double g = std::abs(p[0] * p[1] - t);
      if (g < gap) {
        gap = g;
        best = Candidate{p[0], p[1], true};
      }
    }
  }

  WitnessModel w;
  w.c1 = best.c1;
  w.c2 = best.c2;
  if (std::abs(w.c1 * w.c2 - t) > 1e-9)
    throw std::logic_error("build_witness: no admissible correlation pair found");

  const auto make_mu = [](double mq, double mr, double corr) {
    auto res = pair_distribution_from_moments(mq, mr, corr, 1e-12);
    if (!std::holds_alternative<PairDistribution>(res))
      throw std::logic_error("build_witness: induced distribution is negative");
    return std::get<PairDistribution>(res);
  };
  w.mu1 = make_mu(b.alpha1, b.beta1, w.c1);
  w.mu2 = make_mu(b.alpha2, b.beta2, w.c2);
  return w;
}

DecisionReport decide_single(const Behavior& b, const DecisionConfig& cfg) {
  DecisionReport rep;
  rep.bounds = compute_bounds(b);
  const auto c = corner_products(rep.bounds);
  rep.product_min = c.min4;
  rep.product_max = c.max4;
  const double t = b.corr_ab;
  rep.single_lhs = (t - c.min4) * (t - c.max4);
  const bool nbc = rep.single_lhs <= cfg.tol_zero;
  rep.verdict = nbc ? Verdict::NonBiContextual : Verdict::BiContextual;
  rep.sides = reconcile_sides(t, c, nbc, raw_sides(t, c, cfg.tol_zero));
  rep.necessary_bound = necessary_bound_check(b).bound;
  if (nbc) rep.witness = build_witness(b, rep.bounds, cfg);
  return rep;
}

Behavior mix_behaviors(const Behavior& b1, double w, const Behavior& b2) {
  if (!(w >= 0.0 && w <= 1.0))
    throw std::invalid_argument("mix_behaviors: weight must lie in [0, 1]");
  const double v = 1.0 - w;
  Behavior out;
  out.alpha1 = w * b1.alpha1 + v * b2.alpha1;
  out.alpha2 = w * b1.alpha2 + v * b2.alpha2;
  out.beta1 = w * b1.beta1 + v * b2.beta1;
  out.beta2 = w * b1.beta2 + v * b2.beta2;
  out.corr_ab = w * b1.corr_ab + v * b2.corr_ab;
  if (b1.mean_a && b2.mean_a) out.mean_a = w * *b1.mean_a + v * *b2.mean_a;
  if (b1.mean_b && b2.mean_b) out.mean_b = w * *b1.mean_b + v * *b2.mean_b;
  if (b1.tables && b2.tables) {
    const auto mix_table = [w, v](const PairDistribution& x,
                                  const PairDistribution& y) {
      return PairDistribution{w * x.pp + v * y.pp, w * x.pm + v * y.pm,
                              w * x.mp + v * y.mp, w * x.mm + v * y.mm};
    };
    SettingTables t;
    t.alpha = mix_table(b1.tables->alpha, b2.tables->alpha);
    t.beta = mix_table(b1.tables->beta, b2.tables->beta);
    t.joint = mix_table(b1.tables->joint, b2.tables->joint);
    out.tables = t;
  }
  return out;
}

std::size_t SixVariableDistribution::index(int a1, int a2, int b1, int b2,
                                           int A, int B) {
  const auto bit = [](int s) { return static_cast<std::size_t>(s < 0); };
  return (bit(a1) << 5) | (bit(a2) << 4) | (bit(b1) << 3) | (bit(b2) << 2) |
         (bit(A) << 1) | bit(B);
}

double SixVariableDistribution::total() const {
  double s = 0.0;
  for (double v : cells_) s += v;
  return s;
}

namespace {
const std::array<int, 2> kSigns = {+1, -1};
}

PairDistribution SixVariableDistribution::marginal_alpha() const {
  PairDistribution out;
  for (int a1 : kSigns)
    for (int a2 : kSigns) {
      double s = 0.0;
      for (int b1 : kSigns)
        for (int b2 : kSigns)
          for (int A : kSigns)
            for (int B : kSigns) s += probability(a1, a2, b1, b2, A, B);
      out.set_cell(a1, a2, s);
    }
  return out;
}

PairDistribution SixVariableDistribution::marginal_beta() const {
  PairDistribution out;
  for (int b1 : kSigns)
    for (int b2 : kSigns) {
      double s = 0.0;
      for (int a1 : kSigns)
        for (int a2 : kSigns)
          for (int A : kSigns)
            for (int B : kSigns) s += probability(a1, a2, b1, b2, A, B);
      out.set_cell(b1, b2, s);
    }
  return out;
}

PairDistribution SixVariableDistribution::marginal_joint() const {
  PairDistribution out;
  for (int A : kSigns)
    for (int B : kSigns) {
      double s = 0.0;
      for (int a1 : kSigns)
        for (int a2 : kSigns)
          for (int b1 : kSigns)
            for (int b2 : kSigns) s += probability(a1, a2, b1, b2, A, B);
      out.set_cell(A, B, s);
    }
  return out;
}

std::array<double, 8> SixVariableDistribution::marginal_alpha_with_a() const {
  std::array<double, 8> out{};
  const auto bit = [](int s) { return static_cast<std::size_t>(s < 0); };
  for (int a1 : kSigns)
    for (int a2 : kSigns)
      for (int A : kSigns) {
        double s = 0.0;
        for (int b1 : kSigns)
          for (int b2 : kSigns)
            for (int B : kSigns) s += probability(a1, a2, b1, b2, A, B);
        out[(bit(a1) << 2) | (bit(a2) << 1) | bit(A)] = s;
      }
  return out;
}

std::array<double, 8> SixVariableDistribution::marginal_beta_with_b() const {
  std::array<double, 8> out{};
  const auto bit = [](int s) { return static_cast<std::size_t>(s < 0); };
  for (int b1 : kSigns)
    for (int b2 : kSigns)
      for (int B : kSigns) {
        double s = 0.0;
        for (int a1 : kSigns)
          for (int a2 : kSigns)
            for (int A : kSigns) s += probability(a1, a2, b1, b2, A, B);
        out[(bit(b1) << 2) | (bit(b2) << 1) | bit(B)] = s;
      }
  return out;
}

SixVariableDistribution construct_jpd(const SettingTables& t, double nd_tol) {
  if (!t.valid())
    throw std::invalid_argument("construct_jpd: invalid setting tables");
  const auto nd = check_no_disturbance(t, nd_tol);
  if (!nd.pass()) throw NoDisturbanceError(nd);

  const auto p_a = [&t](int a) {
    return a > 0 ? t.joint.pp + t.joint.pm : t.joint.mp + t.joint.mm;
  };
  const auto p_b = [&t](int b) {
    return b > 0 ? t.joint.pp + t.joint.mp : t.joint.pm + t.joint.mm;
  };

  SixVariableDistribution out;
  for (int a1 : kSigns)
    for (int a2 : kSigns)
      for (int b1 : kSigns)
        for (int b2 : kSigns) {
          const int A = a1 * a2;  // delta lifting: only A = a1*a2 carries mass
          const int B = b1 * b2;
          const double pa = p_a(A);
          const double pb = p_b(B);
          const double numer =
              t.alpha.cell(a1, a2) * t.beta.cell(b1, b2) * t.joint.cell(A, B);
          double value = 0.0;
          if (pa > 0.0 && pb > 0.0) {
            value = numer / (pa * pb);
          } else if (numer > nd_tol) {
            // A zero marginal with surviving joint mass cannot be divided
            // out; no-disturbance should have excluded this.
            throw std::invalid_argument(
                "construct_jpd: zero marginal with conflicting joint mass");
          }
          out.at(a1, a2, b1, b2, A, B) = value;
        }
  return out;
}

}  // namespace bictx
