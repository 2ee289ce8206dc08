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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pabisim/lifting.hpp"

namespace pabisim {

/// A nonempty convex set of distributions, or the adjoined termination
/// element (bottom). Emptiness is representable only as bottom.
class Lifted {
public:
    static Lifted bottom() { return Lifted(std::nullopt); }
    static Lifted of(Polytope poly) { return Lifted(std::move(poly)); }

    bool is_bottom() const { return !poly_.has_value(); }
    const Polytope& poly() const { return *poly_; }

    bool operator==(const Lifted& o) const = default;

private:
    explicit Lifted(std::optional<Polytope> poly) : poly_(std::move(poly)) {}
    std::optional<Polytope> poly_;
};

/// Semantic equality: bottom matches bottom, sets match by hull equality.
bool lifted_equal(const Lifted& a, const Lifted& b);

/// Total assignment of a Lifted value to every label.
using LabeledFam = std::map<Label, Lifted>;

/// Pointwise binary mix p*C + (1-p)*D in generator representation,
/// reduced to vertices.
Polytope minkowski(const Rat& p, const Polytope& c, const Polytope& d);

/// Binary mix on the termination extension: projection at p in {0,1};
/// otherwise bottom absorbs, and two sets combine via minkowski.
Lifted blackhole_combine(const Rat& p, const Lifted& u, const Lifted& v);

/// Labelwise blackhole_combine; the label domains must agree (ArityError).
LabeledFam exp_combine(const Rat& p, const LabeledFam& f, const LabeledFam& g);

/// n-ary mixes, derived from the binary operations by peeling off the last
/// argument (with the remainder renormalized) and the projection rule.
Polytope minkowski_n(const std::vector<Rat>& coefficients, const std::vector<Polytope>& args);
Lifted blackhole_combine_n(const std::vector<Rat>& coefficients, const std::vector<Lifted>& args);
LabeledFam exp_combine_n(const std::vector<Rat>& coefficients, const std::vector<LabeledFam>& args);

/// n-ary distribution mix; replaceable so the law suite can run against a
/// deliberately broken variant.
using DistCombiner = std::function<Dist(const std::vector<Rat>&, const std::vector<Dist>&)>;

struct LawResult {
    std::string law;
    std::string carrier;
    int passes = 0;
    int failures = 0;
    std::string first_counterexample;  // empty when none
};

struct AxiomsReport {
    std::vector<LawResult> results;
    int total_failures = 0;
    std::string render() const;  // one line per law x carrier
};

/// Runs `samples` random instances of each convex-algebra law (projection,
/// barycenter, idempotence, parametric commutativity, parametric
/// associativity) against each carrier (Dist, Polytope, Lifted,
/// LabeledFam). Deterministic for a fixed seed.
AxiomsReport axioms_report(int samples, unsigned long long seed);

/// Same, with the Dist-carrier combiner replaced.
AxiomsReport axioms_report_with(int samples, unsigned long long seed,
                                const DistCombiner& dist_combine);

}  // namespace pabisim
