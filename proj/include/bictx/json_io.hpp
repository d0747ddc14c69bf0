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

#include <json.hpp>

#include "bictx/behavior.hpp"
#include "bictx/decision.hpp"
#include "bictx/quantum.hpp"
#include "bictx/stats.hpp"

namespace bictx {

// JSON field names below are contractual: they are consumed by the CLI,
// the sweep emitters and any downstream tooling. Malformed input throws
// std::invalid_argument with a description of the offending field.

nlohmann::json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const nlohmann::json& j);

nlohmann::json decision_report_to_json(const DecisionReport& r);

nlohmann::json counts_to_json(const OutcomeCounts& c);
OutcomeCounts counts_from_json(const nlohmann::json& j);

nlohmann::json count_table_to_json(const CountTable& t);
CountTable count_table_from_json(const nlohmann::json& j);

nlohmann::json uncertain_report_to_json(const UncertainReport& r);

nlohmann::json mermin_peres_report_to_json(const MerminPeresReport& r);

nlohmann::json measurement_basis_to_json(const MeasurementBasis& b);

}  // namespace bictx
