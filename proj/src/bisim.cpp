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

#include "pabisim/bisim.hpp"

#include <algorithm>
#include <set>

#include "pabisim/lifting.hpp"

namespace pabisim {

std::map<StateId, std::vector<StateId>> Partition::blocks() const {
    std::map<StateId, std::vector<StateId>> out;
    for (const auto& [s, b] : block_of) out[b].push_back(s);
    return out;
}

bool Partition::refines(const Partition& coarser) const {
    for (const auto& [id, members] : blocks()) {
        for (const StateId& s : members)
            if (!coarser.same_block(id, s)) return false;
    }
    return true;
}

namespace {

// Block-mass projection of a distribution: again a distribution, over
// block ids.
Dist project(const Dist& d, const std::map<StateId, StateId>& block_of) {
    std::map<StateId, Rat> mass;
    for (const auto& [s, p] : d.weights()) mass[block_of.at(s)] += p;
    return Dist::unchecked(std::move(mass));
}

// Per-label view of a state's one-step behaviour under the current
// partition. Two states stay together iff their signatures agree.
//
// strong: the set of projected listed successors, per label.
// convex: the reduced vertex set of the projected successor polytope,
//         per label (hull equality of projections is exactly mutual
//         matchability of generators against the opponent's hull).
using Signature = std::map<Label, std::vector<Dist>>;

Signature signature_of(const PA& pa, const StateId& s, const Partition& p, BisimKind kind) {
    Signature sig;
    for (const Label& a : pa.labels) {
        const auto& listed = pa.successors_of(s, a);
        if (listed.empty()) continue;
        std::vector<Dist> projected;
        projected.reserve(listed.size());
        for (const Dist& d : listed) projected.push_back(project(d, p.block_of));
        Polytope poly(std::move(projected));
        if (kind == BisimKind::convex) poly = conv_reduce(poly);
        sig.emplace(a, poly.generators());
    }
    return sig;
}

Partition from_groups(const std::map<Signature, std::vector<StateId>>& groups) {
    Partition out;
    for (const auto& [sig, members] : groups) {
        StateId leader = *std::min_element(members.begin(), members.end());
        for (const StateId& s : members) out.block_of[s] = leader;
    }
    return out;
}

Partition fixpoint(const PA& pa, BisimKind kind) {
    Partition p;
    StateId leader = pa.states.front();
    for (const StateId& s : pa.states) p.block_of[s] = leader;
    for (;;) {
        Partition next = refine_once(pa, p, kind);
        if (next == p) return p;
        p = std::move(next);
    }
}

}  // namespace

Partition refine_once(const PA& pa, const Partition& p, BisimKind kind) {
    std::map<Signature, std::vector<StateId>> groups;
    for (const StateId& s : pa.states)
        groups[signature_of(pa, s, p, kind)].push_back(s);
    return from_groups(groups);
}

Partition strong_bisimilarity(const PA& pa) { return fixpoint(pa, BisimKind::strong); }

Partition convex_bisimilarity(const PA& pa) { return fixpoint(pa, BisimKind::convex); }

}  // namespace pabisim
