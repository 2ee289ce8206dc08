/*
 * Copyright 2026 The pabisim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <map>
#include <vector>

#include "pabisim/algebra.hpp"
#include "pabisim/lifting.hpp"
#include "pabisim/model.hpp"

namespace pabisim {

inline constexpr size_t kDefaultGeneratorCap = 10000;

/// One labeled step query of the belief-state transformer: the queried
/// distribution, the label, and its full successor set (bottom exactly
/// when some support state lacks the label).
struct BeliefStep {
    Dist source;
    Label label;
    Lifted successors;
};

/// True iff every support state of xi has at least one a-transition; a
/// distribution steps only when all of its support can.
bool can_step(const PA& pa, const Dist& xi, const Label& a);

/// The a-successor set of belief state xi: bottom iff !can_step, otherwise
/// the polytope generated by all per-support-state choices of one listed
/// successor each (reduced to vertices). Throws CapacityError when the
/// pre-reduction generator count would exceed cap; the result is never
/// approximated.
Lifted successors(const PA& pa, const Dist& xi, const Label& a,
                  size_t cap = kDefaultGeneratorCap);

/// successors() bundled with its query.
BeliefStep belief_step(const PA& pa, Dist xi, Label a, size_t cap = kDefaultGeneratorCap);

/// Per-support-state convex choice: for each state, coefficients over its
/// listed a-successors.
using StepChoice = std::map<StateId, std::vector<Rat>>;

/// One resolved transition of the belief state: the xi-weighted mixture of
/// the chosen per-state convex moves. The result always lies in the
/// successors hull.
Dist step(const PA& pa, const Dist& xi, const Label& a, const StepChoice& choice);

/// Checks that mixing commutes with taking successors: the successor set
/// of p*xi1 + (1-p)*xi2 equals the black-hole mix of the components'
/// successor sets. Holds on all inputs.
bool mix_law_check(const PA& pa, const Dist& xi1, const Dist& xi2, const Rat& p, const Label& a);

/// The successor set computed by folding xi's support through binary
/// black-hole mixes of single-state successor sets; hull-equal to
/// successors() on every input. Exposed for cross-route checks.
Lifted successors_by_fold(const PA& pa, const Dist& xi, const Label& a);

}  // namespace pabisim
