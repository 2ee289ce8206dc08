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

#include "pabisim/algebra.hpp"

#include <future>
#include <random>

#include "pabisim/errors.hpp"

namespace pabisim {

bool lifted_equal(const Lifted& a, const Lifted& b) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
    return hull_equal(a.poly(), b.poly());
}

Polytope minkowski(const Rat& p, const Polytope& c, const Polytope& d) {
    std::vector<Dist> gens;
    gens.reserve(c.generators().size() * d.generators().size());
    for (const Dist& x : c.generators())
        for (const Dist& y : d.generators())
            gens.push_back(convex_combine({p, Rat::one() - p}, {x, y}));
    return conv_reduce(Polytope(std::move(gens)));
}

Lifted blackhole_combine(const Rat& p, const Lifted& u, const Lifted& v) {
    if (p.sign() < 0 || p > Rat::one())
        throw CoefficientError("mix coefficient " + p.str() + " outside [0,1]");
    if (p.is_one()) return u;
    if (p.is_zero()) return v;
    if (u.is_bottom() || v.is_bottom()) return Lifted::bottom();
    return Lifted::of(minkowski(p, u.poly(), v.poly()));
}

LabeledFam exp_combine(const Rat& p, const LabeledFam& f, const LabeledFam& g) {
    if (f.size() != g.size()) throw ArityError("label domains differ");
    LabeledFam out;
    auto gi = g.begin();
    for (const auto& [label, fl] : f) {
        if (gi->first != label) throw ArityError("label domains differ");
        out.emplace(label, blackhole_combine(p, fl, gi->second));
        ++gi;
    }
    return out;
}

namespace {

void check_convex(const std::vector<Rat>& ps, size_t nargs) {
    if (ps.size() != nargs || nargs == 0) throw ArityError("coefficient count mismatch");
    Rat total;
    for (const Rat& p : ps) {
        if (p.sign() < 0) throw CoefficientError("negative coefficient " + p.str());
        total += p;
    }
    if (!total.is_one()) throw CoefficientError("coefficients sum to " + total.str());
}

// Shared n-ary scheme: projection when some coefficient is 1, otherwise
// peel off the last argument and renormalize the rest.
template <typename T, typename Binary>
T nary_mix(const std::vector<Rat>& ps, const std::vector<T>& xs, const Binary& binary) {
    check_convex(ps, xs.size());
    for (size_t j = 0; j < ps.size(); ++j)
        if (ps[j].is_one()) return xs[j];
    // Not a projection, so ps.back() < 1 and the remainder has mass > 0.
    Rat rest_mass = Rat::one() - ps.back();
    std::vector<Rat> rest_ps(ps.begin(), ps.end() - 1);
    for (Rat& p : rest_ps) p = p / rest_mass;
    std::vector<T> rest_xs(xs.begin(), xs.end() - 1);
    T rest = nary_mix(rest_ps, rest_xs, binary);
    return binary(rest_mass, rest, xs.back());
}

}  // namespace

Polytope minkowski_n(const std::vector<Rat>& coefficients, const std::vector<Polytope>& args) {
    return nary_mix(coefficients, args,
                    [](const Rat& p, const Polytope& a, const Polytope& b) {
                        return minkowski(p, a, b);
                    });
}

Lifted blackhole_combine_n(const std::vector<Rat>& coefficients, const std::vector<Lifted>& args) {
    return nary_mix(coefficients, args, [](const Rat& p, const Lifted& a, const Lifted& b) {
        return blackhole_combine(p, a, b);
    });
}

LabeledFam exp_combine_n(const std::vector<Rat>& coefficients,
                         const std::vector<LabeledFam>& args) {
    return nary_mix(coefficients, args,
                    [](const Rat& p, const LabeledFam& a, const LabeledFam& b) {
                        return exp_combine(p, a, b);
                    });
}

// ---------------------------------------------------------------------------
// Randomized law verification.

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    // Bounded draw independent of distribution-class implementations.
    long next(long lo, long hi) {
        return lo + static_cast<long>(gen() % static_cast<unsigned long long>(hi - lo + 1));
    }

    Rat unit_rational() {  // in [0,1], denominator <= 12
        long den = next(1, 12);
        return Rat(next(0, den), den);
    }

    Rat open_unit_rational() {  // in (0,1)
        long den = next(2, 12);
        return Rat(next(1, den - 1), den);
    }

    // Convex coefficient tuple by exact stick-breaking; zeros can occur.
    std::vector<Rat> convex_tuple(size_t k) {
        std::vector<Rat> ps;
        Rat remaining = Rat::one();
        for (size_t i = 0; i + 1 < k; ++i) {
            Rat cut = remaining * unit_rational();
            ps.push_back(cut);
            remaining -= cut;
        }
        ps.push_back(remaining);
        return ps;
    }

    Dist dist() {
        static const std::vector<StateId> universe = {"s0", "s1", "s2", "s3"};
        size_t k = static_cast<size_t>(next(1, 4));
        std::vector<StateId> support = universe;
        for (size_t i = 0; i < support.size(); ++i)
            std::swap(support[i], support[static_cast<size_t>(next(0, 3))]);
        support.resize(k);

        std::map<StateId, Rat> w;
        Rat remaining = Rat::one();
        for (size_t i = 0; i + 1 < k; ++i) {
            Rat cut = remaining * open_unit_rational();
            w[support[i]] = cut;
            remaining -= cut;
        }
        w[support[k - 1]] = remaining;
        return Dist::make(std::move(w));
    }

    Polytope polytope() {
        std::vector<Dist> gens;
        size_t k = static_cast<size_t>(next(1, 3));
        for (size_t i = 0; i < k; ++i) gens.push_back(dist());
        return Polytope(std::move(gens));
    }

    Lifted lifted() {
        if (next(0, 3) == 0) return Lifted::bottom();
        return Lifted::of(polytope());
    }

    LabeledFam fam() {
        LabeledFam f;
        f.emplace("a", lifted());
        f.emplace("b", lifted());
        return f;
    }
};

std::string show(const Dist& d) { return d.literal(); }

std::string show(const Polytope& p) {
    std::string out = "{";
    for (size_t i = 0; i < p.generators().size(); ++i) {
        if (i) out += " | ";
        out += p.generators()[i].literal();
    }
    return out + "}";
}

std::string show(const Lifted& l) { return l.is_bottom() ? "bottom" : show(l.poly()); }

std::string show(const LabeledFam& f) {
    std::string out;
    for (const auto& [a, l] : f) {
        if (!out.empty()) out += "; ";
        out += a + "=" + show(l);
    }
    return out;
}

// One carrier instantiation the laws run against. The n-ary law widths
// are per carrier: the distribution carrier exercises wide mixes cheaply,
// the set-valued carriers keep theirs narrower.
template <typename T>
struct Carrier {
    std::string name;
    std::function<T(Rng&)> random;
    std::function<T(const std::vector<Rat>&, const std::vector<T>&)> mix;
    std::function<bool(const T&, const T&)> equal;
    long projection_max_arity = 4;
    long barycenter_max_arity = 3;
};

template <typename T>
std::vector<LawResult> run_laws(const Carrier<T>& carrier, int samples, unsigned long long seed,
                                unsigned long long carrier_index) {
    struct Law {
        std::string name;
        std::function<std::optional<std::string>(Rng&)> instance;  // counterexample or nullopt
    };

    auto mix2 = [&carrier](const Rat& p, const T& x, const T& y) {
        return carrier.mix({p, Rat::one() - p}, {x, y});
    };

    std::vector<Law> laws;
    laws.push_back({"projection", [&](Rng& rng) -> std::optional<std::string> {
        size_t k = static_cast<size_t>(rng.next(1, carrier.projection_max_arity));
        size_t j = static_cast<size_t>(rng.next(0, static_cast<long>(k) - 1));
        std::vector<Rat> ps(k, Rat::zero());
        ps[j] = Rat::one();
        std::vector<T> xs;
        for (size_t i = 0; i < k; ++i) xs.push_back(carrier.random(rng));
        T got = carrier.mix(ps, xs);
        if (carrier.equal(got, xs[j])) return std::nullopt;
        return "projection at j=" + std::to_string(j) + ": got " + show(got) + ", expected " +
               show(xs[j]);
    }});
    laws.push_back({"barycenter", [&](Rng& rng) -> std::optional<std::string> {
        size_t n = static_cast<size_t>(rng.next(1, carrier.barycenter_max_arity));
        size_t m = static_cast<size_t>(rng.next(1, carrier.barycenter_max_arity));
        std::vector<Rat> ps = rng.convex_tuple(n);
        std::vector<std::vector<Rat>> qs;
        for (size_t i = 0; i < n; ++i) qs.push_back(rng.convex_tuple(m));
        std::vector<T> xs;
        for (size_t j = 0; j < m; ++j) xs.push_back(carrier.random(rng));

        std::vector<T> inner;
        for (size_t i = 0; i < n; ++i) inner.push_back(carrier.mix(qs[i], xs));
        T lhs = carrier.mix(ps, inner);

        std::vector<Rat> rs(m, Rat::zero());
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < n; ++i) rs[j] += ps[i] * qs[i][j];
        T rhs = carrier.mix(rs, xs);

        if (carrier.equal(lhs, rhs)) return std::nullopt;
        return "barycenter: lhs " + show(lhs) + " != rhs " + show(rhs);
    }});
    laws.push_back({"idempotence", [&](Rng& rng) -> std::optional<std::string> {
        Rat p = rng.unit_rational();
        T x = carrier.random(rng);
        T got = mix2(p, x, x);
        if (carrier.equal(got, x)) return std::nullopt;
        return "idempotence at p=" + p.str() + ": got " + show(got) + " for " + show(x);
    }});
    laws.push_back({"parametric-commutativity", [&](Rng& rng) -> std::optional<std::string> {
        Rat p = rng.unit_rational();
        T x = carrier.random(rng);
        T y = carrier.random(rng);
        T lhs = mix2(p, x, y);
        T rhs = mix2(Rat::one() - p, y, x);
        if (carrier.equal(lhs, rhs)) return std::nullopt;
        return "commutativity at p=" + p.str() + ": " + show(lhs) + " != " + show(rhs);
    }});
    laws.push_back({"parametric-associativity", [&](Rng& rng) -> std::optional<std::string> {
        Rat p = rng.open_unit_rational();
        Rat q = rng.open_unit_rational();
        T x = carrier.random(rng);
        T y = carrier.random(rng);
        T z = carrier.random(rng);
        T lhs = mix2(p, mix2(q, x, y), z);
        Rat pq = p * q;
        Rat rest = Rat::one() - pq;
        T rhs = mix2(pq, x, mix2(p * (Rat::one() - q) / rest, y, z));
        if (carrier.equal(lhs, rhs)) return std::nullopt;
        return "associativity at p=" + p.str() + ", q=" + q.str() + ": " + show(lhs) +
               " != " + show(rhs);
    }});

    // Samples are split over a fixed number of chunks, each drawing from
    // its own fixed-seed stream, so the report is identical no matter how
    // the chunk tasks get scheduled.
    constexpr int kChunks = 8;
    struct Chunk {
        int count;
        std::future<LawResult> task;
    };
    std::vector<std::vector<Chunk>> per_law(laws.size());
    for (size_t li = 0; li < laws.size(); ++li) {
        for (int chunk = 0; chunk < kChunks; ++chunk) {
            int count = samples / kChunks + (chunk < samples % kChunks ? 1 : 0);
            unsigned long long chunk_seed = seed * 1000003ULL + li * 101ULL +
                                            carrier_index * 7919ULL +
                                            static_cast<unsigned long long>(chunk) * 951731ULL;
            per_law[li].push_back(
                {count, std::async(std::launch::async, [&, li, count, chunk_seed] {
                     LawResult result;
                     Rng rng(chunk_seed);
                     for (int i = 0; i < count; ++i) {
                         auto counterexample = laws[li].instance(rng);
                         if (counterexample) {
                             if (result.failures == 0)
                                 result.first_counterexample = *counterexample;
                             ++result.failures;
                         } else {
                             ++result.passes;
                         }
                     }
                     return result;
                 })});
        }
    }
    std::vector<LawResult> results;
    results.reserve(laws.size());
    for (size_t li = 0; li < laws.size(); ++li) {
        LawResult merged;
        merged.law = laws[li].name;
        merged.carrier = carrier.name;
        for (Chunk& chunk : per_law[li]) {
            LawResult part = chunk.task.get();
            if (merged.failures == 0 && part.failures > 0)
                merged.first_counterexample = part.first_counterexample;
            merged.passes += part.passes;
            merged.failures += part.failures;
        }
        results.push_back(std::move(merged));
    }
    return results;
}

void append_results(AxiomsReport& report, std::vector<LawResult> results) {
    for (LawResult& r : results) {
        report.total_failures += r.failures;
        report.results.push_back(std::move(r));
    }
}

}  // namespace

std::string AxiomsReport::render() const {
    std::string out;
    for (const auto& r : results) {
        out += r.law + " x " + r.carrier + ": pass=" + std::to_string(r.passes) +
               " fail=" + std::to_string(r.failures);
        if (!r.first_counterexample.empty()) out += " counterexample: " + r.first_counterexample;
        out += "\n";
    }
    return out;
}

AxiomsReport axioms_report(int samples, unsigned long long seed) {
    return axioms_report_with(samples, seed, [](const std::vector<Rat>& ps,
                                                const std::vector<Dist>& xs) {
        return convex_combine(ps, xs);
    });
}

AxiomsReport axioms_report_with(int samples, unsigned long long seed,
                                const DistCombiner& dist_combine) {
    AxiomsReport report;

    Carrier<Dist> dist_carrier{
        "Dist",
        [](Rng& rng) { return rng.dist(); },
        dist_combine,
        [](const Dist& a, const Dist& b) { return a == b; },
        4,
        3,
    };
    auto dist_task = std::async(std::launch::async, [&] {
        return run_laws(dist_carrier, samples, seed, 0);
    });

    Carrier<Polytope> poly_carrier{
        "Polytope",
        [](Rng& rng) { return rng.polytope(); },
        [](const std::vector<Rat>& ps, const std::vector<Polytope>& xs) {
            return minkowski_n(ps, xs);
        },
        [](const Polytope& a, const Polytope& b) { return hull_equal(a, b); },
        3,
        2,
    };
    auto poly_task = std::async(std::launch::async, [&] {
        return run_laws(poly_carrier, samples, seed, 1);
    });

    Carrier<Lifted> lifted_carrier{
        "Lifted",
        [](Rng& rng) { return rng.lifted(); },
        [](const std::vector<Rat>& ps, const std::vector<Lifted>& xs) {
            return blackhole_combine_n(ps, xs);
        },
        lifted_equal,
        3,
        2,
    };
    auto lifted_task = std::async(std::launch::async, [&] {
        return run_laws(lifted_carrier, samples, seed, 2);
    });

    Carrier<LabeledFam> fam_carrier{
        "LabeledFam",
        [](Rng& rng) { return rng.fam(); },
        [](const std::vector<Rat>& ps, const std::vector<LabeledFam>& xs) {
            return exp_combine_n(ps, xs);
        },
        [](const LabeledFam& a, const LabeledFam& b) {
            if (a.size() != b.size()) return false;
            auto bi = b.begin();
            for (const auto& [label, l] : a) {
                if (bi->first != label || !lifted_equal(l, bi->second)) return false;
                ++bi;
            }
            return true;
        },
        3,
        2,
    };
    auto fam_task = std::async(std::launch::async, [&] {
        return run_laws(fam_carrier, samples, seed, 3);
    });

    append_results(report, dist_task.get());
    append_results(report, poly_task.get());
    append_results(report, lifted_task.get());
    append_results(report, fam_task.get());

    return report;
}

}  // namespace pabisim
