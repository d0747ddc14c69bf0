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

namespace bictx {

/// Numerical tolerances used across the library. Closed-form arithmetic
/// dominates, so only accumulated floating error matters: probability
/// validity is held to 1e-12 and cross-consistency checks (no-disturbance,
/// derived-vs-stored mean agreement) to 1e-9. Both are adjustable, e.g.
/// for finite-shot empirical data where deviations are statistical.
struct Tolerances {
  double prob_validity = 1e-12;
  double cross_consistency = 1e-9;
};

}  // namespace bictx
