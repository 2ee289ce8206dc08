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

#include "pabisim/upto.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "pabisim/bisim.hpp"
#include "pabisim/errors.hpp"
#include "pabisim/lifting.hpp"
#include "pabisim/ratlp.hpp"
#include "pabisim/transformer.hpp"

namespace pabisim {

std::optional<TechniqueBase> technique_base_from_string(const std::string& name) {
    if (name == "plain") return TechniqueBase::plain;
    if (name == "cvx") return TechniqueBase::cvx;
    if (name == "cvx_e") return TechniqueBase::cvx_e;
    return std::nullopt;
}

std::string to_string(TechniqueBase base) {
    switch (base) {
        case TechniqueBase::plain: return "plain";
        case TechniqueBase::cvx: return "cvx";
        case TechniqueBase::cvx_e: return "cvx_e";
    }
    return "?";
}

std::vector<DistPair> equivalence_closure_pairs(const std::vector<DistPair>& rel) {
    // Union-find over the distinct distributions occurring in rel.
    std::vector<Dist> nodes;
    for (const auto& [l, r] : rel) {
        nodes.push_back(l);
        nodes.push_back(r);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto index_of = [&nodes](const Dist& d) {
        return static_cast<size_t>(std::lower_bound(nodes.begin(), nodes.end(), d) -
                                   nodes.begin());
    };

    std::vector<size_t> parent(nodes.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [l, r] : rel) {
        size_t a = find(index_of(l));
        size_t b = find(index_of(r));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::map<size_t, std::vector<size_t>> classes;
    for (size_t i = 0; i < nodes.size(); ++i) classes[find(i)].push_back(i);

    std::vector<DistPair> out;
    for (const auto& [root, members] : classes)
        for (size_t i : members)
            for (size_t j : members) out.emplace_back(nodes[i], nodes[j]);
    return out;
}

namespace {

// Materialized closure family f(R): the pair list lambda ranges over.
std::vector<DistPair> closure_family(const std::vector<DistPair>& rel,
                                     const TechniqueConfig& config) {
    if (config.base == TechniqueBase::cvx_e) return equivalence_closure_pairs(rel);
    return rel;
}

// Builds and solves the membership query
//   left  = sum_i lambda_i u_i + diag
//   right = sum_i lambda_i v_i + diag     (sum lambda + |diag| = 1)
// where `left`/`right` are either fixed distributions or an unknown convex
// mixture of given generators (the defender side of an obligation); at
// most one side may be unknown.
struct MembershipQuery {
    const std::vector<DistPair>& family;
    bool identity_slack;

    const Dist* fixed_left = nullptr;
    const Dist* fixed_right = nullptr;
    const std::vector<Dist>* mixed_left = nullptr;
    const std::vector<Dist>* mixed_right = nullptr;

    std::optional<ClosureWitness> solve() const {
        // Diagonal variables live on the support of the fixed sides.
        std::set<StateId> diag_support;
        if (identity_slack) {
            if (fixed_left && fixed_right) {
                for (const auto& [s, p] : fixed_left->weights())
                    if (fixed_right->in_support(s)) diag_support.insert(s);
            } else if (fixed_left) {
                for (const auto& [s, p] : fixed_left->weights()) diag_support.insert(s);
            } else if (fixed_right) {
                for (const auto& [s, p] : fixed_right->weights()) diag_support.insert(s);
            }
        }
        std::vector<StateId> diag(diag_support.begin(), diag_support.end());

        std::set<StateId> states;
        auto absorb = [&states](const Dist& d) {
            for (const auto& [s, p] : d.weights()) states.insert(s);
        };
        for (const auto& [u, v] : family) {
            absorb(u);
            absorb(v);
        }
        if (fixed_left) absorb(*fixed_left);
        if (fixed_right) absorb(*fixed_right);
        if (mixed_left)
            for (const Dist& g : *mixed_left) absorb(g);
        if (mixed_right)
            for (const Dist& g : *mixed_right) absorb(g);

        const size_t nf = family.size();
        const size_t nd = diag.size();
        const size_t nl = mixed_left ? mixed_left->size() : 0;
        const size_t nr = mixed_right ? mixed_right->size() : 0;
        const size_t nvars = nf + nd + nl + nr;

        LinSystem sys;
        sys.num_vars = static_cast<int>(nvars);

        auto diag_col = [&](size_t k) { return nf + k; };
        auto left_col = [&](size_t k) { return nf + nd + k; };
        auto right_col = [&](size_t k) { return nf + nd + nl + k; };

        for (const StateId& s : states) {
            // Left equation at s.
            std::vector<Rat> row(nvars, Rat::zero());
            for (size_t i = 0; i < nf; ++i) row[i] = family[i].first.at(s);
            for (size_t k = 0; k < nd; ++k)
                if (diag[k] == s) row[diag_col(k)] = Rat::one();
            Rat rhs;
            if (fixed_left) {
                rhs = fixed_left->at(s);
            } else {
                for (size_t k = 0; k < nl; ++k) row[left_col(k)] = -(*mixed_left)[k].at(s);
            }
            sys.add_row(std::move(row), rhs);

            // Right equation at s.
            std::vector<Rat> row2(nvars, Rat::zero());
            for (size_t i = 0; i < nf; ++i) row2[i] = family[i].second.at(s);
            for (size_t k = 0; k < nd; ++k)
                if (diag[k] == s) row2[diag_col(k)] = Rat::one();
            Rat rhs2;
            if (fixed_right) {
                rhs2 = fixed_right->at(s);
            } else {
                for (size_t k = 0; k < nr; ++k) row2[right_col(k)] = -(*mixed_right)[k].at(s);
            }
            sys.add_row(std::move(row2), rhs2);
        }

        // Normalizations: lambda plus diagonal mass is convex; so is each
        // unknown defender mixture.
        {
            std::vector<Rat> row(nvars, Rat::zero());
            for (size_t i = 0; i < nf + nd; ++i) row[i] = Rat::one();
            sys.add_row(std::move(row), Rat::one());
        }
        if (nl) {
            std::vector<Rat> row(nvars, Rat::zero());
            for (size_t k = 0; k < nl; ++k) row[left_col(k)] = Rat::one();
            sys.add_row(std::move(row), Rat::one());
        }
        if (nr) {
            std::vector<Rat> row(nvars, Rat::zero());
            for (size_t k = 0; k < nr; ++k) row[right_col(k)] = Rat::one();
            sys.add_row(std::move(row), Rat::one());
        }

        auto witness = feasible(sys);
        if (!witness) return std::nullopt;

        ClosureWitness w;
        for (size_t i = 0; i < nf; ++i)
            if (!(*witness)[i].is_zero())
                w.terms.emplace_back(family[i].first, family[i].second, (*witness)[i]);
        Rat diag_mass;
        std::map<StateId, Rat> diag_weights;
        for (size_t k = 0; k < nd; ++k) {
            const Rat& m = (*witness)[diag_col(k)];
            if (m.is_zero()) continue;
            diag_mass += m;
            diag_weights[diag[k]] = m;
        }
        if (!diag_mass.is_zero()) {
            for (auto& [s, m] : diag_weights) m = m / diag_mass;
            w.diagonal = {diag_mass, Dist::make(std::move(diag_weights))};
        }
        return w;
    }
};

// Plain membership: literal pair equality, with either side possibly
// required to lie in a defender hull instead of being fixed.
std::optional<ClosureWitness> plain_member(const std::vector<DistPair>& rel, bool slack,
                                           const Dist* fixed_left, const Dist* fixed_right,
                                           const std::vector<Dist>* mixed_left,
                                           const std::vector<Dist>* mixed_right) {
    auto in_hull = [](const Dist& d, const std::vector<Dist>& gens) {
        return conv_member(d, Polytope(gens)).has_value();
    };
    for (const auto& [u, v] : rel) {
        bool left_ok = fixed_left ? u == *fixed_left : in_hull(u, *mixed_left);
        if (!left_ok) continue;
        bool right_ok = fixed_right ? v == *fixed_right : in_hull(v, *mixed_right);
        if (!right_ok) continue;
        ClosureWitness w;
        w.terms.emplace_back(u, v, Rat::one());
        return w;
    }
    if (slack) {
        // The diagonal pair (phi, phi) with full weight.
        if (fixed_left && fixed_right) {
            if (*fixed_left == *fixed_right) {
                ClosureWitness w;
                w.diagonal = {Rat::one(), *fixed_left};
                return w;
            }
        } else if (fixed_left && mixed_right) {
            if (in_hull(*fixed_left, *mixed_right)) {
                ClosureWitness w;
                w.diagonal = {Rat::one(), *fixed_left};
                return w;
            }
        } else if (fixed_right && mixed_left) {
            if (in_hull(*fixed_right, *mixed_left)) {
                ClosureWitness w;
                w.diagonal = {Rat::one(), *fixed_right};
                return w;
            }
        }
    }
    return std::nullopt;
}

std::optional<ClosureWitness> member_query(const std::vector<DistPair>& rel,
                                           const TechniqueConfig& config, const Dist* fixed_left,
                                           const Dist* fixed_right,
                                           const std::vector<Dist>* mixed_left,
                                           const std::vector<Dist>* mixed_right) {
    if (config.base == TechniqueBase::plain)
        return plain_member(rel, config.identity_slack, fixed_left, fixed_right, mixed_left,
                            mixed_right);
    std::vector<DistPair> family = closure_family(rel, config);
    MembershipQuery q{family, config.identity_slack, fixed_left, fixed_right, mixed_left,
                      mixed_right};
    return q.solve();
}

}  // namespace

std::optional<ClosureWitness> closure_member(const Dist& left, const Dist& right,
                                             const std::vector<DistPair>& rel,
                                             const TechniqueConfig& config) {
    return member_query(rel, config, &left, &right, nullptr, nullptr);
}

Verdict check_certificate(const PA& pa, const Certificate& cert) {
    for (const auto& [l, r] : cert.pairs) {
        for (const auto& [s, p] : l.weights())
            if (!pa.has_state(s)) throw InputError("state '" + s + "' not in the automaton");
        for (const auto& [s, p] : r.weights())
            if (!pa.has_state(s)) throw InputError("state '" + s + "' not in the automaton");
    }

    Verdict verdict;
    for (size_t idx = 0; idx < cert.pairs.size(); ++idx) {
        const auto& [zl, zr] = cert.pairs[idx];
        for (const Label& a : pa.labels) {
            bool lcan = can_step(pa, zl, a);
            bool rcan = can_step(pa, zr, a);
            if (lcan != rcan) {
                verdict.failures.push_back({idx, a,
                                            lcan ? Side::left : Side::right,
                                            lcan ? zl : zr,
                                            "one side steps and the other does not"});
                continue;
            }
            if (!lcan) continue;

            Lifted ls = successors(pa, zl, a);
            Lifted rs = successors(pa, zr, a);
            const Polytope& lp = ls.poly();
            const Polytope& rp = rs.poly();

            for (const Dist& g : lp.generators()) {
                if (!member_query(cert.pairs, cert.config, &g, nullptr, nullptr,
                                  &rp.generators()))
                    verdict.failures.push_back(
                        {idx, a, Side::left, g,
                         "no defender response keeps the successor pair in the closure"});
            }
            for (const Dist& g : rp.generators()) {
                if (!member_query(cert.pairs, cert.config, nullptr, &g, &lp.generators(),
                                  nullptr))
                    verdict.failures.push_back(
                        {idx, a, Side::right, g,
                         "no defender response keeps the successor pair in the closure"});
            }
        }
    }
    verdict.accepted = verdict.failures.empty();
    return verdict;
}

// ---------------------------------------------------------------------------
// Bounded refuter.

namespace {

std::set<Label> enabled_labels(const PA& pa, const Dist& d) {
    std::set<Label> out;
    for (const Label& a : pa.labels)
        if (can_step(pa, d, a)) out.insert(a);
    return out;
}

// Successor sets get requeried heavily across the iterative-deepening
// rounds of a refutation, so one run shares a memo table.
struct SuccessorCache {
    const PA& pa;
    std::map<std::pair<Dist, Label>, Lifted> memo;

    const Lifted& get(const Dist& d, const Label& a) {
        auto it = memo.find({d, a});
        if (it == memo.end()) it = memo.emplace(std::pair{d, a}, successors(pa, d, a)).first;
        return it->second;
    }
    bool steps(const Dist& d, const Label& a) { return !get(d, a).is_bottom(); }
};

// Searches for a predicate that is false on g but holds on every defender
// generator, drawn from the family closed under defender mixing: plain
// stepping ability, and "steps b and every b-successor satisfies ...".
std::optional<std::vector<std::string>> predicate_refute(SuccessorCache& cache, const Dist& g,
                                                         const std::vector<Dist>& defenders,
                                                         int depth) {
    const PA& pa = cache.pa;
    if (depth >= 1) {
        for (const Label& b : pa.labels) {
            if (cache.steps(g, b)) continue;
            bool all = std::all_of(defenders.begin(), defenders.end(),
                                   [&](const Dist& h) { return cache.steps(h, b); });
            if (all)
                return std::vector<std::string>{"it cannot step '" + b +
                                                "' while every defender response can"};
        }
    }
    if (depth >= 2) {
        for (const Label& b : pa.labels) {
            if (!cache.steps(g, b)) continue;
            bool all = std::all_of(defenders.begin(), defenders.end(),
                                   [&](const Dist& h) { return cache.steps(h, b); });
            if (!all) continue;
            std::vector<Dist> next_defenders;
            for (const Dist& h : defenders) {
                const auto& gens = cache.get(h, b).poly().generators();
                next_defenders.insert(next_defenders.end(), gens.begin(), gens.end());
            }
            std::sort(next_defenders.begin(), next_defenders.end());
            next_defenders.erase(std::unique(next_defenders.begin(), next_defenders.end()),
                                 next_defenders.end());
            for (const Dist& g2 : cache.get(g, b).poly().generators()) {
                auto sub = predicate_refute(cache, g2, next_defenders, depth - 1);
                if (sub) {
                    std::vector<std::string> steps{"after '" + b + "' it can reach " +
                                                   g2.literal() + ","};
                    steps.insert(steps.end(), sub->begin(), sub->end());
                    return steps;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

namespace {

std::optional<RefuteTrace> refute_at(SuccessorCache& cache, const Dist& xi, const Dist& zeta,
                                     int depth) {
    const PA& pa = cache.pa;
    if (depth >= 1) {
        for (const Label& a : pa.labels) {
            bool l = cache.steps(xi, a);
            bool r = cache.steps(zeta, a);
            if (l != r) {
                RefuteTrace t;
                t.steps.push_back("label '" + a + "': the " +
                                  std::string(l ? "left" : "right") + " side steps, the " +
                                  std::string(l ? "right" : "left") + " side does not");
                return t;
            }
        }
    }
    if (depth >= 2) {
        for (const Label& a : pa.labels) {
            if (!cache.steps(xi, a)) continue;
            const Polytope& lp = cache.get(xi, a).poly();
            const Polytope& rp = cache.get(zeta, a).poly();
            struct SideCase {
                const char* name;
                const Polytope* spoiler;
                const Polytope* defender;
            };
            for (const SideCase& sc :
                 {SideCase{"left", &lp, &rp}, SideCase{"right", &rp, &lp}}) {
                for (const Dist& g : sc.spoiler->generators()) {
                    auto sub = predicate_refute(cache, g, sc.defender->generators(), depth - 1);
                    if (sub) {
                        RefuteTrace t;
                        t.steps.push_back("after label '" + a + "', the " + sc.name +
                                          " side can reach " + g.literal() + ",");
                        t.steps.insert(t.steps.end(), sub->begin(), sub->end());
                        return t;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<RefuteTrace> refute_bounded(const PA& pa, const Dist& xi, const Dist& zeta,
                                          int depth) {
    // Iterative deepening: the first budget that refutes yields the
    // shallowest distinguishing strategy.
    SuccessorCache cache{pa, {}};
    for (int d = 1; d <= depth; ++d)
        if (auto trace = refute_at(cache, xi, zeta, d)) return trace;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Witness search.

namespace {

// Worklist saturation from the query pair. Returns the closed candidate
// relation, or nullopt when the budgets run out or a pair with mismatched
// stepping ability gets in.
std::optional<Certificate> saturate(const PA& pa, const Dist& xi, const Dist& zeta,
                                    size_t max_pairs, int max_depth,
                                    const TechniqueConfig& config, bool seed_convex_pairs) {
    if (max_pairs == 0) return std::nullopt;

    std::vector<DistPair> pairs;
    std::vector<int> depth;
    auto add_pair = [&](const Dist& l, const Dist& r, int d) {
        DistPair p{l, r};
        if (std::find(pairs.begin(), pairs.end(), p) != pairs.end()) return true;
        if (pairs.size() >= max_pairs) return false;
        pairs.push_back(std::move(p));
        depth.push_back(d);
        return true;
    };

    add_pair(xi, zeta, 0);  // always fits: the budget is at least one
    if (seed_convex_pairs) {
        // Convex-bisimilar states are distribution bisimilar, so their
        // Dirac pairs are safe helpers; the final re-check keeps us honest.
        for (const auto& [id, members] : convex_bisimilarity(pa).blocks()) {
            for (const StateId& s : members)
                for (const StateId& t : members)
                    if (s != t) add_pair(Dist::dirac(s), Dist::dirac(t), 0);
        }
    }

    for (size_t i = 0; i < pairs.size(); ++i) {
        for (const Label& a : pa.labels) {
            // Copies: pairs may reallocate while this pair is processed.
            const Dist zl = pairs[i].first;
            const Dist zr = pairs[i].second;
            bool lcan = can_step(pa, zl, a);
            if (lcan != can_step(pa, zr, a)) return std::nullopt;
            if (!lcan) continue;

            const Polytope lp = successors(pa, zl, a).poly();
            const Polytope rp = successors(pa, zr, a).poly();

            auto pick_defender = [&](const Dist& g, const Polytope& defender) {
                auto want = enabled_labels(pa, g);
                for (const Dist& h : defender.generators())
                    if (enabled_labels(pa, h) == want) return h;
                return defender.generators().front();
            };

            for (const Dist& g : lp.generators()) {
                if (member_query(pairs, config, &g, nullptr, nullptr, &rp.generators()))
                    continue;
                if (depth[i] + 1 > max_depth) return std::nullopt;
                if (!add_pair(g, pick_defender(g, rp), depth[i] + 1)) return std::nullopt;
            }
            for (const Dist& g : rp.generators()) {
                if (member_query(pairs, config, nullptr, &g, &lp.generators(), nullptr))
                    continue;
                if (depth[i] + 1 > max_depth) return std::nullopt;
                if (!add_pair(pick_defender(g, lp), g, depth[i] + 1)) return std::nullopt;
            }
        }
    }
    return Certificate{std::move(pairs), config};
}

}  // namespace

SearchOutcome search_witness(const PA& pa, const Dist& xi, const Dist& zeta, size_t max_pairs,
                             int max_depth, const TechniqueConfig& config) {
    SearchOutcome out;
    if (auto trace = refute_bounded(pa, xi, zeta, max_depth)) {
        out.kind = SearchOutcome::Kind::refuted;
        out.trace = std::move(trace);
        return out;
    }
    for (bool seeded : {false, true}) {
        auto cert = saturate(pa, xi, zeta, max_pairs, max_depth, config, seeded);
        if (!cert) continue;
        if (check_certificate(pa, *cert).accepted) {
            out.kind = SearchOutcome::Kind::proven;
            out.certificate = std::move(cert);
            return out;
        }
    }
    out.kind = SearchOutcome::Kind::unknown;
    return out;
}

// ---------------------------------------------------------------------------
// Certificate files.

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bad certificate JSON: ") + e.what());
    }

    auto dist_from = [](const nlohmann::json& obj) {
        if (!obj.is_object()) throw ParseError(0, "distribution must be an object");
        std::map<StateId, Rat> w;
        for (const auto& [state, value] : obj.items()) {
            if (!is_identifier(state)) throw ParseError(0, "bad state name '" + state + "'");
            std::optional<Rat> r;
            if (value.is_string()) {
                r = Rat::parse(value.get<std::string>());
            } else if (value.is_number_integer()) {
                r = Rat(value.get<long>());
            }
            if (!r) throw ParseError(0, "bad rational for state '" + state + "'");
            w.emplace(state, *r);
        }
        try {
            return Dist::make(std::move(w));
        } catch (const Error& e) {
            throw ParseError(0, e.what());
        }
    };

    Certificate cert;
    try {
        const auto& technique = doc.at("technique");
        auto base = technique_base_from_string(technique.at("base").get<std::string>());
        if (!base) throw ParseError(0, "unknown technique base");
        cert.config.base = *base;
        cert.config.identity_slack = technique.at("identity_slack").get<bool>();
        for (const auto& pair : doc.at("pairs")) {
            DistPair p{dist_from(pair.at("left")), dist_from(pair.at("right"))};
            if (std::find(cert.pairs.begin(), cert.pairs.end(), p) == cert.pairs.end())
                cert.pairs.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bad certificate JSON: ") + e.what());
    }
    return cert;
}

std::string certificate_to_json(const Certificate& cert) {
    nlohmann::json doc;
    doc["technique"] = {{"base", to_string(cert.config.base)},
                        {"identity_slack", cert.config.identity_slack}};
    doc["pairs"] = nlohmann::json::array();
    for (const auto& [l, r] : cert.pairs) {
        nlohmann::json left, right;
        for (const auto& [s, p] : l.weights()) left[s] = p.str();
        for (const auto& [s, p] : r.weights()) right[s] = p.str();
        doc["pairs"].push_back({{"left", left}, {"right", right}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace pabisim
