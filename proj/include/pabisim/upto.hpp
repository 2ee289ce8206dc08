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
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pabisim/model.hpp"

namespace pabisim {

/// How a candidate relation is closed before membership tests:
///   plain  - membership in the relation itself,
///   cvx    - membership in its convex hull,
///   cvx_e  - membership in the convex hull of its equivalence closure.
/// identity_slack additionally allows one shared diagonal summand on both
/// sides of every membership query.
enum class TechniqueBase { plain, cvx, cvx_e };

struct TechniqueConfig {
    TechniqueBase base = TechniqueBase::cvx_e;
    bool identity_slack = true;

    bool operator==(const TechniqueConfig&) const = default;
};

std::optional<TechniqueBase> technique_base_from_string(const std::string& name);
std::string to_string(TechniqueBase base);

using DistPair = std::pair<Dist, Dist>;

/// Finite candidate relation plus the closure it is checked under.
struct Certificate {
    std::vector<DistPair> pairs;  // duplicate-free
    TechniqueConfig config;
};

/// How a successful membership query decomposed the queried pair.
struct ClosureWitness {
    // Closure pairs actually used, with their convex weights.
    std::vector<std::tuple<Dist, Dist, Rat>> terms;
    // Diagonal summand (total mass, shared distribution) when the slack
    // carried weight.
    std::optional<std::pair<Rat, Dist>> diagonal;
};

/// Reflexive-symmetric-transitive closure of the relation, taken over the
/// finitely many distributions that occur in it.
std::vector<DistPair> equivalence_closure_pairs(const std::vector<DistPair>& rel);

/// Decides (left, right) in f(rel) for the closure f selected by config,
/// returning the decomposition when it exists.
std::optional<ClosureWitness> closure_member(const Dist& left, const Dist& right,
                                             const std::vector<DistPair>& rel,
                                             const TechniqueConfig& config);

enum class Side { left, right };

/// One failed proof obligation of a rejected certificate.
struct Obligation {
    size_t pair_index;
    Label label;
    Side spoiler_side;
    Dist spoiler_generator;
    std::string reason;
};

struct Verdict {
    bool accepted = false;
    std::vector<Obligation> failures;  // canonical order, nonempty iff rejected
};

/// Checks every pair of the certificate: stepping ability must agree per
/// label, and each successor generator of either side must be matched by a
/// defender point of the other side's successor hull such that the pair of
/// them lies in the configured closure of the certificate relation (one
/// combined feasibility query per generator). Acceptance proves all listed
/// pairs distribution bisimilar. Throws InputError when a distribution
/// mentions a state outside the automaton.
Verdict check_certificate(const PA& pa, const Certificate& cert);

struct RefuteTrace {
    std::vector<std::string> steps;
};

/// Sound bounded refutation: fires only when a genuine distinguishing
/// spoiler strategy exists (stepping-ability mismatch, possibly below a
/// chain of forced moves); no completeness claim.
std::optional<RefuteTrace> refute_bounded(const PA& pa, const Dist& xi, const Dist& zeta,
                                          int depth);

struct SearchOutcome {
    enum class Kind { proven, refuted, unknown };
    Kind kind = Kind::unknown;
    std::optional<Certificate> certificate;  // set when proven
    std::optional<RefuteTrace> trace;        // set when refuted
};

/// Semi-procedure for distribution bisimilarity of (xi, zeta): tries the
/// bounded refuter, then saturates a candidate relation from the query
/// pair (optionally pre-seeded with convex-bisimilar state pairs),
/// re-verifying any found certificate with check_certificate before
/// reporting it proven.
SearchOutcome search_witness(const PA& pa, const Dist& xi, const Dist& zeta, size_t max_pairs,
                             int max_depth, const TechniqueConfig& config = {});

/// Certificate file format (JSON). Parsing throws ParseError.
Certificate certificate_from_json(const std::string& text);
std::string certificate_to_json(const Certificate& cert);

}  // namespace pabisim
