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

#include "pabisim/lifting.hpp"

#include <algorithm>

#include "pabisim/errors.hpp"
#include "pabisim/ratlp.hpp"

namespace pabisim {

Polytope::Polytope(std::vector<Dist> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw Error("polytope with no generators");
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

std::optional<Coupling> lift_related(const StateRel& rel, const Dist& xi, const Dist& xi2) {
    // Variables: one per relation pair restricted to supp(xi) x supp(xi2).
    std::vector<std::pair<StateId, StateId>> vars;
    for (const auto& [s, t] : rel)
        if (xi.in_support(s) && xi2.in_support(t)) vars.emplace_back(s, t);

    LinSystem sys;
    sys.num_vars = static_cast<int>(vars.size());
    for (const auto& [s, p] : xi.weights()) {
        std::vector<Rat> row(vars.size(), Rat::zero());
        for (size_t j = 0; j < vars.size(); ++j)
            if (vars[j].first == s) row[j] = Rat::one();
        sys.add_row(std::move(row), p);
    }
    for (const auto& [t, p] : xi2.weights()) {
        std::vector<Rat> row(vars.size(), Rat::zero());
        for (size_t j = 0; j < vars.size(); ++j)
            if (vars[j].second == t) row[j] = Rat::one();
        sys.add_row(std::move(row), p);
    }

    auto witness = feasible(sys);
    if (!witness) return std::nullopt;
    Coupling nu;
    for (size_t j = 0; j < vars.size(); ++j)
        if (!(*witness)[j].is_zero()) nu.emplace(vars[j], (*witness)[j]);
    return nu;
}

bool lift_related_partition(const std::map<StateId, StateId>& block_of, const Dist& xi,
                            const Dist& xi2) {
    std::map<StateId, Rat> mass;
    for (const auto& [s, p] : xi.weights()) mass[block_of.at(s)] += p;
    for (const auto& [s, p] : xi2.weights()) mass[block_of.at(s)] -= p;
    return std::all_of(mass.begin(), mass.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

constexpr size_t kNoSkip = static_cast<size_t>(-1);

// Membership of point in the hull of gens (optionally with one generator
// masked out), as the feasibility of a mixture system. Coefficients come
// back indexed over the unmasked generators.
std::optional<std::vector<Rat>> member_coeffs(const Dist& point, const std::vector<Dist>& gens,
                                              size_t skip) {
    size_t count = gens.size() - (skip == kNoSkip ? 0 : 1);
    if (count == 0) return std::nullopt;

    // Coordinatewise bounds are necessary: a mixture lies between the
    // generator minimum and maximum on every state.
    std::set<StateId> support;
    for (const auto& [s, p] : point.weights()) support.insert(s);
    for (size_t j = 0; j < gens.size(); ++j) {
        if (j == skip) continue;
        for (const auto& [s, p] : gens[j].weights()) support.insert(s);
    }
    for (const StateId& s : support) {
        Rat value = point.at(s);
        bool first = true;
        Rat lo, hi;
        for (size_t j = 0; j < gens.size(); ++j) {
            if (j == skip) continue;
            Rat w = gens[j].at(s);
            if (first) {
                lo = hi = w;
                first = false;
            } else if (w < lo) {
                lo = w;
            } else if (w > hi) {
                hi = w;
            }
        }
        if (value < lo || hi < value) return std::nullopt;
    }

    LinSystem sys;
    sys.num_vars = static_cast<int>(count);
    for (const StateId& s : support) {
        std::vector<Rat> row;
        row.reserve(count);
        for (size_t j = 0; j < gens.size(); ++j)
            if (j != skip) row.push_back(gens[j].at(s));
        sys.add_row(std::move(row), point.at(s));
    }
    sys.add_row(std::vector<Rat>(count, Rat::one()), Rat::one());

    return feasible(sys);
}

}  // namespace

std::optional<std::vector<Rat>> conv_member(const Dist& point, const Polytope& poly) {
    const auto& gens = poly.generators();

    // Literal generators answer without an LP (the list is sorted).
    auto hit = std::lower_bound(gens.begin(), gens.end(), point);
    if (hit != gens.end() && *hit == point) {
        std::vector<Rat> coeffs(gens.size(), Rat::zero());
        coeffs[static_cast<size_t>(hit - gens.begin())] = Rat::one();
        return coeffs;
    }
    if (gens.size() == 1) return std::nullopt;

    return member_coeffs(point, gens, kNoSkip);
}

namespace {

// Exact planar convex hull (monotone chain) for generators whose union
// support has three states: two weights serve as coordinates, the third
// is dependent. Collinear interior points are dropped, so the result is
// exactly the vertex set.
std::vector<Dist> reduce_planar(const std::vector<Dist>& gens, const StateId& sx,
                                const StateId& sy) {
    struct Pt {
        Rat x, y;
        size_t idx;
    };
    std::vector<Pt> pts;
    pts.reserve(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) pts.push_back({gens[i].at(sx), gens[i].at(sy), i});
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        if (auto c = a.x <=> b.x; c != 0) return c < 0;
        return a.y < b.y;
    });

    auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return ((a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)).sign();
    };

    std::vector<Pt> chain(2 * pts.size());
    size_t k = 0;
    for (const Pt& p : pts) {  // lower hull
        while (k >= 2 && cross(chain[k - 2], chain[k - 1], p) <= 0) --k;
        chain[k++] = p;
    }
    for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {  // upper hull
        while (k >= lower && cross(chain[k - 2], chain[k - 1], pts[i]) <= 0) --k;
        chain[k++] = pts[i];
    }
    std::vector<Dist> out;
    for (size_t i = 0; i + 1 < k; ++i) out.push_back(gens[chain[i].idx]);
    if (out.empty()) out.push_back(gens[pts.front().idx]);  // all points equal
    return out;
}

}  // namespace

namespace {

// Endpoints of an all-collinear generator list, or nullopt. Exact test:
// every difference from the first generator must be a scalar multiple of
// the first nonzero difference.
std::optional<std::vector<Dist>> reduce_collinear(const std::vector<Dist>& gens,
                                                  const std::set<StateId>& states) {
    const Dist& origin = gens.front();
    std::map<StateId, Rat> dir;
    for (const StateId& s : states) {
        Rat delta = gens[1].at(s) - origin.at(s);
        if (!delta.is_zero()) dir[s] = delta;
    }
    const StateId& axis = dir.begin()->first;
    const Rat& axis_step = dir.begin()->second;

    for (size_t i = 2; i < gens.size(); ++i) {
        Rat lambda = (gens[i].at(axis) - origin.at(axis)) / axis_step;
        for (const StateId& s : states) {
            Rat expected = origin.at(s);
            auto it = dir.find(s);
            if (it != dir.end()) expected += lambda * it->second;
            if (!(gens[i].at(s) == expected)) return std::nullopt;
        }
    }
    auto [lo, hi] = std::minmax_element(
        gens.begin(), gens.end(),
        [&axis](const Dist& a, const Dist& b) { return a.at(axis) < b.at(axis); });
    return std::vector<Dist>{*lo, *hi};
}

}  // namespace

Polytope conv_reduce(const Polytope& poly) {
    std::vector<Dist> kept = poly.generators();
    if (kept.size() <= 2) return Polytope(std::move(kept));

    std::set<StateId> states;
    for (const Dist& g : kept)
        for (const auto& [s, p] : g.weights()) states.insert(s);

    // Low-dimensional carriers have LP-free exact reductions.
    if (auto segment = reduce_collinear(kept, states)) return Polytope(std::move(*segment));
    if (states.size() == 3) {
        auto it = states.begin();
        const StateId& sx = *std::next(it);
        const StateId& sy = *std::next(it, 2);
        return Polytope(reduce_planar(kept, sx, sy));
    }

    // A generator that is the unique extreme on some coordinate is a
    // vertex; skip its membership test.
    std::vector<bool> sure_vertex(kept.size(), false);
    for (const StateId& s : states) {
        size_t lo = 0, hi = 0, lo_count = 1, hi_count = 1;
        for (size_t j = 1; j < kept.size(); ++j) {
            Rat w = kept[j].at(s);
            if (auto c = w <=> kept[lo].at(s); c < 0) {
                lo = j;
                lo_count = 1;
            } else if (c == 0) {
                ++lo_count;
            }
            if (auto c = w <=> kept[hi].at(s); c > 0) {
                hi = j;
                hi_count = 1;
            } else if (c == 0) {
                ++hi_count;
            }
        }
        if (lo_count == 1) sure_vertex[lo] = true;
        if (hi_count == 1) sure_vertex[hi] = true;
    }

    // A generator interior to the others' hull can always be expressed by
    // the vertices, so greedy removal in canonical order yields exactly
    // the vertex set.
    for (size_t i = 0; i < kept.size() && kept.size() > 1;) {
        if (sure_vertex[i]) {
            ++i;
            continue;
        }
        if (member_coeffs(kept[i], kept, i)) {
            kept.erase(kept.begin() + static_cast<long>(i));
            sure_vertex.erase(sure_vertex.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    return Polytope(std::move(kept));
}

bool hull_equal(const Polytope& a, const Polytope& b) {
    for (const Dist& g : a.generators())
        if (!conv_member(g, b)) return false;
    for (const Dist& g : b.generators())
        if (!conv_member(g, a)) return false;
    return true;
}

std::optional<Polytope> convex_steps(const PA& pa, const StateId& s, const Label& a) {
    if (!pa.has_state(s)) throw InputError("unknown state '" + s + "'");
    if (!pa.has_label(a)) throw InputError("unknown label '" + a + "'");
    const auto& listed = pa.successors_of(s, a);
    if (listed.empty()) return std::nullopt;
    return Polytope(listed);
}

}  // namespace pabisim
