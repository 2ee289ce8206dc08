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

#include "pabisim/transformer.hpp"

#include "pabisim/errors.hpp"

namespace pabisim {

namespace {

void check_supported(const PA& pa, const Dist& xi) {
    for (const auto& [s, p] : xi.weights())
        if (!pa.has_state(s)) throw InputError("state '" + s + "' not in the automaton");
}

}  // namespace

bool can_step(const PA& pa, const Dist& xi, const Label& a) {
    check_supported(pa, xi);
    if (!pa.has_label(a)) throw InputError("unknown label '" + a + "'");
    for (const auto& [s, p] : xi.weights())
        if (pa.successors_of(s, a).empty()) return false;
    return true;
}

Lifted successors(const PA& pa, const Dist& xi, const Label& a, size_t cap) {
    if (!can_step(pa, xi, a)) return Lifted::bottom();

    std::vector<const std::vector<Dist>*> lists;
    std::vector<Rat> weights;
    size_t count = 1;
    for (const auto& [s, p] : xi.weights()) {
        const auto& listed = pa.successors_of(s, a);
        if (count > cap / listed.size())
            throw CapacityError("successor generators would exceed cap");
        count *= listed.size();
        lists.push_back(&listed);
        weights.push_back(p);
    }

    // One generator per tuple of raw-transition choices, odometer order.
    std::vector<Dist> gens;
    gens.reserve(count);
    std::vector<size_t> pick(lists.size(), 0);
    for (;;) {
        std::map<StateId, Rat> mix;
        for (size_t i = 0; i < lists.size(); ++i)
            for (const auto& [t, q] : (*lists[i])[pick[i]].weights()) mix[t] += weights[i] * q;
        gens.push_back(Dist::make(std::move(mix)));

        size_t i = 0;
        while (i < pick.size() && ++pick[i] == lists[i]->size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return Lifted::of(conv_reduce(Polytope(std::move(gens))));
}

BeliefStep belief_step(const PA& pa, Dist xi, Label a, size_t cap) {
    Lifted result = successors(pa, xi, a, cap);
    return {std::move(xi), std::move(a), std::move(result)};
}

Dist step(const PA& pa, const Dist& xi, const Label& a, const StepChoice& choice) {
    if (!can_step(pa, xi, a)) throw ChoiceError("the distribution cannot take this step");
    std::map<StateId, Rat> mix;
    for (const auto& [s, p] : xi.weights()) {
        auto it = choice.find(s);
        if (it == choice.end()) throw ChoiceError("no choice for support state '" + s + "'");
        const auto& listed = pa.successors_of(s, a);
        const auto& coeffs = it->second;
        if (coeffs.size() != listed.size())
            throw ArityError("choice width differs from the successor count of '" + s + "'");
        Rat total;
        for (const Rat& c : coeffs) {
            if (c.sign() < 0) throw CoefficientError("negative choice coefficient " + c.str());
            total += c;
        }
        if (!total.is_one())
            throw CoefficientError("choice coefficients sum to " + total.str());
        for (size_t j = 0; j < listed.size(); ++j) {
            if (coeffs[j].is_zero()) continue;
            for (const auto& [t, q] : listed[j].weights()) mix[t] += p * coeffs[j] * q;
        }
    }
    return Dist::make(std::move(mix));
}

Lifted successors_by_fold(const PA& pa, const Dist& xi, const Label& a) {
    check_supported(pa, xi);
    // Peel support states off the back, renormalizing the remainder, and
    // combine the single-state successor sets with binary black-hole mixes.
    std::vector<std::pair<StateId, Rat>> entries(xi.weights().begin(), xi.weights().end());

    auto state_lifted = [&](const StateId& s) {
        auto poly = convex_steps(pa, s, a);
        return poly ? Lifted::of(std::move(*poly)) : Lifted::bottom();
    };

    Lifted acc = state_lifted(entries.back().first);
    Rat mass = entries.back().second;
    for (size_t i = entries.size() - 1; i-- > 0;) {
        mass += entries[i].second;
        Rat p = entries[i].second / mass;
        acc = blackhole_combine(p, state_lifted(entries[i].first), acc);
    }
    return acc;
}

bool mix_law_check(const PA& pa, const Dist& xi1, const Dist& xi2, const Rat& p, const Label& a) {
    Dist mixed = convex_combine({p, Rat::one() - p}, {xi1, xi2});
    Lifted direct = successors(pa, mixed, a);
    Lifted composed = blackhole_combine(p, successors(pa, xi1, a), successors(pa, xi2, a));
    return lifted_equal(direct, composed);
}

}  // namespace pabisim
