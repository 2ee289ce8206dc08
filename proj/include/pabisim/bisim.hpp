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

#include "pabisim/model.hpp"

namespace pabisim {

/// Partition of a PA's states. Block ids are canonical: the
/// lexicographically least member of the block.
struct Partition {
    std::map<StateId, StateId> block_of;

    bool same_block(const StateId& s, const StateId& t) const {
        return block_of.at(s) == block_of.at(t);
    }

    /// Blocks keyed by their canonical id, members sorted.
    std::map<StateId, std::vector<StateId>> blocks() const;

    bool operator==(const Partition& o) const = default;

    /// True when p refines *this: every block of p lies inside one block
    /// of *this.
    bool refines(const Partition& coarser) const;
};

/// Coarsest strong probabilistic bisimulation, by greatest-fixpoint
/// refinement from the one-block partition.
Partition strong_bisimilarity(const PA& pa);

/// Coarsest convex probabilistic bisimulation: transitions are matched
/// against the convex hull of the opponent's listed successors.
Partition convex_bisimilarity(const PA& pa);

/// One refinement pass of the given kind applied to p; the fixpoint
/// property is p == refine_once(pa, p).
enum class BisimKind { strong, convex };
Partition refine_once(const PA& pa, const Partition& p, BisimKind kind);

}  // namespace pabisim
