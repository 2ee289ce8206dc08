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
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pabisim/model.hpp"

namespace pabisim {

/// Relation on states, used as the support constraint of a coupling.
using StateRel = std::set<std::pair<StateId, StateId>>;

/// Joint distribution witnessing that two distributions are related: the
/// marginals reproduce the two sides and the support stays inside the
/// relation it was searched under.
using Coupling = std::map<std::pair<StateId, StateId>, Rat>;

/// Convex set of distributions in generator (V-) representation. The
/// generator list is nonempty, duplicate-free, and kept sorted, so equal
/// lists mean equal polytopes; equal hulls are decided semantically via
/// conv_member.
class Polytope {
public:
    explicit Polytope(std::vector<Dist> generators);

    const std::vector<Dist>& generators() const { return gens_; }

    bool operator==(const Polytope& o) const = default;

private:
    std::vector<Dist> gens_;
};

/// Searches for a coupling of xi and xi2 with support in rel; nullopt when
/// none exists.
std::optional<Coupling> lift_related(const StateRel& rel, const Dist& xi, const Dist& xi2);

/// Fast path of lift_related for equivalence relations given as a
/// partition (state -> block id): related iff every block carries equal
/// mass on both sides.
bool lift_related_partition(const std::map<StateId, StateId>& block_of, const Dist& xi,
                            const Dist& xi2);

/// Convex coefficients over poly's generators reproducing point, or
/// nullopt when point lies outside the hull.
std::optional<std::vector<Rat>> conv_member(const Dist& point, const Polytope& poly);

/// Minimal generator sublist with the same hull (the vertex set);
/// canonical order, idempotent.
Polytope conv_reduce(const Polytope& poly);

/// Hull equality, decided by mutual generator membership.
bool hull_equal(const Polytope& a, const Polytope& b);

/// Generators of the convex transition relation at (s, a): the listed
/// successors; nullopt when s has no a-transition.
std::optional<Polytope> convex_steps(const PA& pa, const StateId& s, const Label& a);

}  // namespace pabisim
