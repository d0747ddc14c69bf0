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

#include "bictx/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bictx {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number())
    throw std::invalid_argument(std::string("missing or non-numeric field '") +
                                field + "'");
  return j.at(field).get<double>();
}

json table_to_json(const PairDistribution& d) {
  return json{{"++", d.pp}, {"+-", d.pm}, {"-+", d.mp}, {"--", d.mm}};
}

PairDistribution table_from_json(const json& j) {
  PairDistribution d;
  d.pp = require_number(j, "++");
  d.pm = require_number(j, "+-");
  d.mp = require_number(j, "-+");
  d.mm = require_number(j, "--");
  return d;
}

// JSON has no NaN/inf; emit null for them (nlohmann would otherwise
// serialize the token "null" anyway, this makes it explicit).
json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json behavior_to_json(const Behavior& b) {
  json j{{"alpha1", b.alpha1}, {"alpha2", b.alpha2}, {"beta1", b.beta1},
         {"beta2", b.beta2},   {"corrAB", b.corr_ab}};
  if (b.mean_a) j["meanA"] = *b.mean_a;
  if (b.mean_b) j["meanB"] = *b.mean_b;
  if (b.tables) {
    j["tables"] = json{{"alpha", table_to_json(b.tables->alpha)},
                       {"beta", table_to_json(b.tables->beta)},
                       {"joint", table_to_json(b.tables->joint)}};
  }
  return j;
}

Behavior behavior_from_json(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("behavior JSON: expected an object");
  Behavior b;
  b.alpha1 = require_number(j, "alpha1");
  b.alpha2 = require_number(j, "alpha2");
  b.beta1 = require_number(j, "beta1");
  b.beta2 = require_number(j, "beta2");
  b.corr_ab = require_number(j, "corrAB");
  if (j.contains("meanA")) b.mean_a = require_number(j, "meanA");
  if (j.contains("meanB")) b.mean_b = require_number(j, "meanB");
  if (j.contains("tables")) {
    const auto& t = j.at("tables");
    if (!t.is_object() || !t.contains("alpha") || !t.contains("beta") ||
        !t.contains("joint"))
      throw std::invalid_argument(
          "behavior JSON: tables must hold alpha, beta and joint");
    SettingTables tables;
    tables.alpha = table_from_json(t.at("alpha"));
    tables.beta = table_from_json(t.at("beta"));
    tables.joint = table_from_json(t.at("joint"));
    b.tables = tables;
  }
  return b;
}

json decision_report_to_json(const DecisionReport& r) {
  json j{{"verdict", to_string(r.verdict)},
         {"L1", r.bounds.l1},
         {"R1", r.bounds.r1},
         {"L2", r.bounds.l2},
         {"R2", r.bounds.r2},
         {"min", r.product_min},
         {"max", r.product_max},
         {"singleLHS", r.single_lhs},
         {"sides", json::array({r.sides.left, r.sides.right, r.sides.upper,
                                r.sides.lower})},
         {"necessaryBound", r.necessary_bound}};
  if (r.witness) {
    j["witness"] = json{{"c1", r.witness->c1},
                        {"c2", r.witness->c2},
                        {"mu1", table_to_json(r.witness->mu1)},
                        {"mu2", table_to_json(r.witness->mu2)}};
  }
  return j;
}

json counts_to_json(const OutcomeCounts& c) {
  return json{{"setting", to_string(c.setting)},
              {"shots", c.shots},
              {"counts",
               json{{"++", c.counts[0]},
                    {"+-", c.counts[1]},
                    {"-+", c.counts[2]},
                    {"--", c.counts[3]}}}};
}

OutcomeCounts counts_from_json(const json& j) {
  if (!j.is_object() || !j.contains("setting") || !j.contains("shots") ||
      !j.contains("counts"))
    throw std::invalid_argument(
        "counts JSON: expected {setting, shots, counts}");
  OutcomeCounts c;
  const std::string setting = j.at("setting").get<std::string>();
  if (setting == "alpha") {
    c.setting = Setting::AlphaLocal;
  } else if (setting == "beta") {
    c.setting = Setting::BetaLocal;
  } else if (setting == "joint") {
    c.setting = Setting::JointMS;
  } else {
    throw std::invalid_argument("counts JSON: unknown setting '" + setting + "'");
  }
  c.shots = j.at("shots").get<std::uint64_t>();
  const auto& cells = j.at("counts");
  const char* keys[4] = {"++", "+-", "-+", "--"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!cells.contains(keys[i]))
      throw std::invalid_argument(std::string("counts JSON: missing cell '") +
                                  keys[i] + "'");
    c.counts[i] = cells.at(keys[i]).get<std::uint64_t>();
  }
  return c;
}

json count_table_to_json(const CountTable& t) {
  return json::array(
      {counts_to_json(t.alpha), counts_to_json(t.beta), counts_to_json(t.joint)});
}

CountTable count_table_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object() && j.contains("counts")) arr = &j.at("counts");
  if (!arr->is_array() || arr->size() != 3)
    throw std::invalid_argument(
        "count table JSON: expected an array of three counts objects");
  CountTable t;
  bool have[3] = {false, false, false};
  for (const auto& item : *arr) {
    const auto c = counts_from_json(item);
    const auto idx = static_cast<std::size_t>(c.setting);
    if (have[idx])
      throw std::invalid_argument("count table JSON: duplicate setting");
    have[idx] = true;
    switch (c.setting) {
      case Setting::AlphaLocal: t.alpha = c; break;
      case Setting::BetaLocal: t.beta = c; break;
      case Setting::JointMS: t.joint = c; break;
    }
  }
  if (!(have[0] && have[1] && have[2]))
    throw std::invalid_argument("count table JSON: all three settings required");
  return t;
}

json uncertain_report_to_json(const UncertainReport& r) {
  const auto uq = [](const UncertainQuantity& q) {
    return json{{"value", q.value}, {"se", q.se}};
  };
  const char* ratio_names[4] = {"AB/L1", "AB/R1", "AB/L2", "AB/R2"};
  json ratios = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    ratios.push_back(json{{"name", ratio_names[i]},
                          {"value", finite_or_null(r.ratios[i].value)},
                          {"se", r.ratios[i].se},
                          {"defined", r.ratios[i].defined},
                          {"finiteResamples", r.ratios[i].finite_resamples}});
  }
  const auto me = [](const MeanEstimate& m) {
    return json{{"value", m.value}, {"se", m.se}};
  };
  json means{{"alpha1", me(r.estimate.alpha1)}, {"alpha2", me(r.estimate.alpha2)},
             {"beta1", me(r.estimate.beta1)},   {"beta2", me(r.estimate.beta2)},
             {"corrAB", me(r.estimate.corr_ab)}, {"meanA", me(r.estimate.mean_a)},
             {"meanB", me(r.estimate.mean_b)}};
  return json{{"verdict", to_string(r.point.verdict)},
              {"L1", uq(r.l1)},
              {"R1", uq(r.r1)},
              {"L2", uq(r.l2)},
              {"R2", uq(r.r2)},
              {"corrAB", uq(r.corr_ab)},
              {"ratios", ratios},
              {"singleLHS", uq(r.single_lhs)},
              {"significance", finite_or_null(r.significance)},
              {"means", means},
              {"warnings", r.estimate.warnings},
              {"resamples", r.resamples},
              {"seed", r.seed},
              {"report", decision_report_to_json(r.point)}};
}

json mermin_peres_report_to_json(const MerminPeresReport& r) {
  json labels = json::array();
  for (const auto& row : r.labels)
    labels.push_back(json::array({row[0], row[1], row[2]}));
  json contexts = json::array();
  for (const auto& ctx : r.scenario_contexts)
    contexts.push_back(json::array({ctx[0], ctx[1], ctx[2]}));
  return json{{"square", labels},
              {"rowSigns", r.row_sign},
              {"colSigns", r.col_sign},
              {"rowProductDefects", r.row_product_defect},
              {"colProductDefects", r.col_product_defect},
              {"maxCommutator", r.max_commutator},
              {"scenarioContexts", contexts},
              {"pass", r.pass()}};
}

json measurement_basis_to_json(const MeasurementBasis& b) {
  json vectors = json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    json amps = json::array();
    for (const auto& a : b.vectors[k])
      amps.push_back(json::array({a.real(), a.imag()}));
    vectors.push_back(json{{"amplitudes", amps},
                           {"A", b.label_a[k]},
                           {"B", b.label_b[k]},
                           {"AB", b.label_ab[k]}});
  }
  return json{{"vectors", vectors}};
}

}  // namespace bictx
