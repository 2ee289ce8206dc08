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

#include <optional>
#include <vector>

#include "pabisim/rat.hpp"

namespace pabisim {

/// Equality system Ax = b over variables x >= 0. Callers encode
/// inequalities with explicit slack variables.
struct LinSystem {
    struct Row {
        std::vector<Rat> coeffs;
        Rat rhs;
    };

    int num_vars = 0;
    std::vector<Row> rows;

    void add_row(std::vector<Rat> coeffs, Rat rhs) {
        rows.push_back({std::move(coeffs), std::move(rhs)});
    }
};

/// Feasible with an exact witness, or infeasible (nullopt). The witness
/// satisfies every row exactly and is componentwise nonnegative.
using LpOutcome = std::optional<std::vector<Rat>>;

/// Phase-1 simplex on exact rationals with Bland's least-index pivot rule,
/// so the outcome and witness are deterministic and cycling is impossible.
/// Throws ShapeError when a row width disagrees with num_vars.
LpOutcome feasible(const LinSystem& sys);

}  // namespace pabisim
