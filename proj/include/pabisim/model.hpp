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

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pabisim/rat.hpp"

namespace pabisim {

using StateId = std::string;
using Label = std::string;

bool is_identifier(std::string_view s);

/// Finitely supported probability distribution over named states.
/// Stored weights are in (0,1] and sum to exactly 1; zero weights are
/// never stored, so the stored key set is the support. Entries are kept
/// as a flat vector sorted by state.
class Dist {
public:
    using Entries = std::vector<std::pair<StateId, Rat>>;

    static Dist dirac(StateId s);

    // Drops zero entries, then validates positivity and unit mass.
    static Dist make(std::map<StateId, Rat> weights);
    static Dist make(Entries weights);  // entries must be sorted by state

    // Trusted constructors for weights already in canonical form. Callers
    // own the invariant; used on hot paths and by test mutants.
    static Dist unchecked(std::map<StateId, Rat> weights);
    static Dist unchecked(Entries weights);

    const Entries& weights() const { return w_; }
    size_t support_size() const { return w_.size(); }

    // Weight of s, zero when s is outside the support.
    Rat at(const StateId& s) const;
    const Rat* find(const StateId& s) const;
    bool in_support(const StateId& s) const { return find(s) != nullptr; }

    // "x1:1/2,x2:1/2" with states in lexicographic order.
    std::string literal() const;

    // Accepts the literal syntax above plus the Dirac shorthand (a bare
    // state name).
    static std::optional<Dist> parse_literal(std::string_view text);

    bool operator==(const Dist& o) const { return w_ == o.w_; }
    std::strong_ordering operator<=>(const Dist& o) const;

private:
    Entries w_;
};

/// Pointwise mixture sum(p_i * dists_i). Coefficients must be nonnegative
/// and sum to 1 (CoefficientError) and match dists in length (ArityError).
Dist convex_combine(const std::vector<Rat>& coefficients, const std::vector<Dist>& dists);

/// Probabilistic automaton: states, labels, and a transition relation
/// (state, label) -> finite duplicate-free list of distributions.
struct PA {
    std::vector<StateId> states;  // sorted, unique, nonempty
    std::vector<Label> labels;    // sorted, unique, nonempty
    std::map<std::pair<StateId, Label>, std::vector<Dist>> transitions;

    bool has_state(const StateId& s) const;
    bool has_label(const Label& a) const;

    // Listed successors of (s, a); empty when there is no transition.
    const std::vector<Dist>& successors_of(const StateId& s, const Label& a) const;

    bool operator==(const PA& o) const = default;
};

/// Parses the line-oriented .pa format. States are declared implicitly by
/// first use and sorted lexicographically. Throws ParseError / SumError
/// with the offending line number.
PA parse_pa(std::istream& in);
PA parse_pa_text(const std::string& text);

/// Canonical serialization; parse_pa(serialize_pa(pa)) == pa. A "labels"
/// line is emitted only for labels that occur in no transition.
std::string serialize_pa(const PA& pa);

}  // namespace pabisim
