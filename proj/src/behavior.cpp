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

#include "bictx/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bictx {

namespace {

void check_mean(std::vector<std::string>& issues, const char* name, double v) {
  if (!(v >= -1.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [-1, 1]";
    issues.push_back(os.str());
  }
}

void check_close(std::vector<std::string>& issues, const char* what,
                 double stored, double derived, double tol) {
  if (std::abs(stored - derived) > tol) {
    std::ostringstream os;
    os << what << ": stored " << stored << " vs derived " << derived
       << " (tol " << tol << ")";
    issues.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> behavior_issues(const Behavior& b,
                                         const Tolerances& tol) {
  std::vector<std::string> issues;
  check_mean(issues, "alpha1", b.alpha1);
  check_mean(issues, "alpha2", b.alpha2);
  check_mean(issues, "beta1", b.beta1);
  check_mean(issues, "beta2", b.beta2);
  check_mean(issues, "corrAB", b.corr_ab);
  if (b.mean_a) {
    check_mean(issues, "meanA", *b.mean_a);
    check_close(issues, "meanA vs <alpha1><alpha2> (source independence)",
                *b.mean_a, b.alpha1 * b.alpha2, tol.cross_consistency);
  }
  if (b.mean_b) {
    check_mean(issues, "meanB", *b.mean_b);
    check_close(issues, "meanB vs <beta1><beta2> (source independence)",
                *b.mean_b, b.beta1 * b.beta2, tol.cross_consistency);
  }
  if (b.tables) {
    const SettingTables& t = *b.tables;
    if (!t.alpha.valid(tol.prob_validity)) issues.push_back("alpha table invalid");
    if (!t.beta.valid(tol.prob_validity)) issues.push_back("beta table invalid");
    if (!t.joint.valid(tol.prob_validity)) issues.push_back("joint table invalid");
    check_close(issues, "alpha1 vs alpha-table mean", b.alpha1,
                t.alpha.mean_first(), tol.cross_consistency);
    check_close(issues, "alpha2 vs alpha-table mean", b.alpha2,
                t.alpha.mean_second(), tol.cross_consistency);
    check_close(issues, "beta1 vs beta-table mean", b.beta1,
                t.beta.mean_first(), tol.cross_consistency);
    check_close(issues, "beta2 vs beta-table mean", b.beta2,
                t.beta.mean_second(), tol.cross_consistency);
    check_close(issues, "corrAB vs joint-table correlation", b.corr_ab,
                t.joint.correlation(), tol.cross_consistency);
    if (b.mean_a)
      check_close(issues, "meanA vs joint-table mean", *b.mean_a,
                  t.joint.mean_first(), tol.cross_consistency);
    if (b.mean_b)
      check_close(issues, "meanB vs joint-table mean", *b.mean_b,
                  t.joint.mean_second(), tol.cross_consistency);
  }
  return issues;
}

void validate_behavior(const Behavior& b, const Tolerances& tol) {
  const auto issues = behavior_issues(b, tol);
  if (issues.empty()) return;
  std::ostringstream os;
  os << "invalid behavior:";
  for (const auto& s : issues) os << "\n  - " << s;
  throw std::invalid_argument(os.str());
}

double NoDisturbanceReport::max_deviation() const {
  return std::max(std::max(dev_a_plus, dev_a_minus),
                  std::max(dev_b_plus, dev_b_minus));
}

std::string NoDisturbanceReport::describe() const {
  std::ostringstream os;
  os << "no-disturbance check " << (pass() ? "passed" : "FAILED")
     << " (tol " << tolerance << "): dev A+=" << dev_a_plus
     << " A-=" << dev_a_minus << " B+=" << dev_b_plus
     << " B-=" << dev_b_minus;
  return os.str();
}

NoDisturbanceReport check_no_disturbance(const SettingTables& t, double tol) {
  NoDisturbanceReport rep;
  rep.tolerance = tol;
  // P(A = +1) from the alpha setting is the even-parity mass.
  const double a_plus_local = t.alpha.pp + t.alpha.mm;
  const double a_minus_local = t.alpha.pm + t.alpha.mp;
  const double a_plus_joint = t.joint.pp + t.joint.pm;
  const double a_minus_joint = t.joint.mp + t.joint.mm;
  rep.dev_a_plus = std::abs(a_plus_local - a_plus_joint);
  rep.dev_a_minus = std::abs(a_minus_local - a_minus_joint);

  const double b_plus_local = t.beta.pp + t.beta.mm;
  const double b_minus_local = t.beta.pm + t.beta.mp;
  const double b_plus_joint = t.joint.pp + t.joint.mp;
  const double b_minus_joint = t.joint.pm + t.joint.mm;
  rep.dev_b_plus = std::abs(b_plus_local - b_plus_joint);
  rep.dev_b_minus = std::abs(b_minus_local - b_minus_joint);
  return rep;
}

Behavior behavior_from_tables(const SettingTables& t, const Tolerances& tol) {
  if (!t.valid(tol.prob_validity))
    throw std::invalid_argument("behavior_from_tables: invalid setting tables");
  const auto nd = check_no_disturbance(t, tol.cross_consistency);
  if (!nd.pass()) throw NoDisturbanceError(nd);

  Behavior b;
  b.alpha1 = t.alpha.mean_first();
  b.alpha2 = t.alpha.mean_second();
  b.beta1 = t.beta.mean_first();
  b.beta2 = t.beta.mean_second();
  b.corr_ab = t.joint.correlation();
  b.mean_a = t.joint.mean_first();
  b.mean_b = t.joint.mean_second();
  b.tables = t;
  validate_behavior(b, tol);  // rejects source-dependent tables
  return b;
}

}  // namespace bictx
