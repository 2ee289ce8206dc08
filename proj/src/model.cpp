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

#include "pabisim/model.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>

#include "pabisim/errors.hpp"

namespace pabisim {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!std::isalpha(head) && s[0] != '_') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Dist Dist::dirac(StateId s) {
    Dist d;
    d.w_.emplace_back(std::move(s), Rat::one());
    return d;
}

Dist Dist::make(Entries weights) {
    Rat total;
    size_t keep = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].second.is_zero()) continue;
        if (weights[i].second.sign() < 0)
            throw Error("negative weight for state " + weights[i].first);
        if (keep > 0 && !(weights[keep - 1].first < weights[i].first))
            throw Error("unsorted or duplicate distribution entries");
        total += weights[i].second;
        if (keep != i) weights[keep] = std::move(weights[i]);
        ++keep;
    }
    weights.resize(keep);
    if (!total.is_one()) throw Error("distribution mass is " + total.str() + ", expected 1");
    Dist d;
    d.w_ = std::move(weights);
    return d;
}

Dist Dist::make(std::map<StateId, Rat> weights) {
    Entries entries;
    entries.reserve(weights.size());
    for (auto& [s, p] : weights) entries.emplace_back(s, p);
    return make(std::move(entries));
}

Dist Dist::unchecked(Entries weights) {
    Dist d;
    d.w_ = std::move(weights);
    return d;
}

Dist Dist::unchecked(std::map<StateId, Rat> weights) {
    Entries entries;
    entries.reserve(weights.size());
    for (auto& [s, p] : weights) entries.emplace_back(s, p);
    return unchecked(std::move(entries));
}

const Rat* Dist::find(const StateId& s) const {
    auto it = std::lower_bound(w_.begin(), w_.end(), s,
                               [](const auto& e, const StateId& key) { return e.first < key; });
    return it != w_.end() && it->first == s ? &it->second : nullptr;
}

Rat Dist::at(const StateId& s) const {
    const Rat* p = find(s);
    return p ? *p : Rat::zero();
}

std::string Dist::literal() const {
    std::string out;
    for (const auto& [s, p] : w_) {
        if (!out.empty()) out += ',';
        out += s;
        out += ':';
        out += p.str();
    }
    return out;
}

std::optional<Dist> Dist::parse_literal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (is_identifier(text)) return dirac(StateId(text));
    std::map<StateId, Rat> weights;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view entry =
            text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        size_t colon = entry.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        std::string_view state = entry.substr(0, colon);
        if (!is_identifier(state)) return std::nullopt;
        auto weight = Rat::parse(entry.substr(colon + 1));
        if (!weight || weight->sign() < 0) return std::nullopt;
        if (!weights.emplace(StateId(state), *weight).second) return std::nullopt;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    Rat total;
    for (auto it = weights.begin(); it != weights.end();) {
        if (it->second.is_zero()) {
            it = weights.erase(it);
        } else {
            total += it->second;
            ++it;
        }
    }
    if (!total.is_one()) return std::nullopt;
    return unchecked(std::move(weights));
}

std::strong_ordering Dist::operator<=>(const Dist& o) const {
    auto a = w_.begin();
    auto b = o.w_.begin();
    for (; a != w_.end() && b != o.w_.end(); ++a, ++b) {
        if (auto c = a->first <=> b->first; c != 0) return c;
        if (auto c = a->second <=> b->second; c != 0) return c;
    }
    if (a != w_.end()) return std::strong_ordering::greater;
    if (b != o.w_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

Dist convex_combine(const std::vector<Rat>& coefficients, const std::vector<Dist>& dists) {
    if (coefficients.size() != dists.size() || dists.empty())
        throw ArityError("coefficient and distribution counts differ");
    Rat total;
    for (const Rat& p : coefficients) {
        if (p.sign() < 0) throw CoefficientError("negative convex coefficient " + p.str());
        total += p;
    }
    if (!total.is_one())
        throw CoefficientError("convex coefficients sum to " + total.str() + ", expected 1");
    Dist::Entries weights;
    for (size_t i = 0; i < dists.size(); ++i) {
        if (coefficients[i].is_zero()) continue;
        for (const auto& [s, p] : dists[i].weights()) {
            auto it = std::lower_bound(
                weights.begin(), weights.end(), s,
                [](const auto& e, const StateId& key) { return e.first < key; });
            if (it != weights.end() && it->first == s) {
                it->second += coefficients[i] * p;
            } else {
                weights.emplace(it, s, coefficients[i] * p);
            }
        }
    }
    return Dist::make(std::move(weights));
}

bool PA::has_state(const StateId& s) const {
    return std::binary_search(states.begin(), states.end(), s);
}

bool PA::has_label(const Label& a) const {
    return std::binary_search(labels.begin(), labels.end(), a);
}

const std::vector<Dist>& PA::successors_of(const StateId& s, const Label& a) const {
    static const std::vector<Dist> none;
    auto it = transitions.find({s, a});
    return it == transitions.end() ? none : it->second;
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

struct RawTransition {
    StateId source;
    Label label;
    Dist dist;
};

// One "IDENT -> entry (, entry)*" transition line.
RawTransition parse_transition_line(int lineno, const StateId& source, std::string_view body) {
    size_t arrow = body.find("->");
    if (arrow == std::string_view::npos) throw ParseError(lineno, "expected '->'");
    auto label_tokens = split_tokens(body.substr(0, arrow));
    if (label_tokens.size() != 1 || !is_identifier(label_tokens[0]))
        throw ParseError(lineno, "expected a single label before '->'");

    std::map<StateId, Rat> weights;
    Rat total;
    std::string entries(body.substr(arrow + 2));
    size_t pos = 0;
    bool saw_entry = false;
    while (pos <= entries.size()) {
        size_t comma = entries.find(',', pos);
        std::string entry = entries.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto parts = split_tokens(entry);
        std::string compact;
        for (const auto& p : parts) compact += p;
        if (compact.empty()) throw ParseError(lineno, "empty distribution entry");
        size_t colon = compact.find(':');
        if (colon == std::string::npos)
            throw ParseError(lineno, "expected 'state:rational' entry");
        std::string state = compact.substr(0, colon);
        if (!is_identifier(state)) throw ParseError(lineno, "bad state name '" + state + "'");
        auto weight = Rat::parse(compact.substr(colon + 1));
        if (!weight) throw ParseError(lineno, "malformed rational '" + compact.substr(colon + 1) + "'");
        if (weight->sign() < 0)
            throw ParseError(lineno, "negative weight for state '" + state + "'");
        if (weights.count(state))
            throw ParseError(lineno, "duplicate entry for state '" + state + "'");
        weights.emplace(state, *weight);
        total += *weight;
        saw_entry = true;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!saw_entry) throw ParseError(lineno, "transition without distribution entries");
    if (!total.is_one())
        throw SumError(lineno, "distribution mass is " + total.str() + ", expected 1");
    for (auto it = weights.begin(); it != weights.end();)
        it = it->second.is_zero() ? weights.erase(it) : std::next(it);
    return {source, label_tokens[0], Dist::unchecked(std::move(weights))};
}

}  // namespace

PA parse_pa(std::istream& in) {
    std::set<StateId> states;
    std::set<Label> labels;
    std::vector<RawTransition> raw;
    std::optional<StateId> current;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        bool indented = !line.empty() && std::isspace(static_cast<unsigned char>(line[0]));
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        if (indented) {
            if (!current) throw ParseError(lineno, "transition outside a 'state' block");
            raw.push_back(parse_transition_line(lineno, *current, line));
            labels.insert(raw.back().label);
            for (const auto& [s, p] : raw.back().dist.weights()) states.insert(s);
        } else if (tokens[0] == "state") {
            if (tokens.size() != 2 || !is_identifier(tokens[1]))
                throw ParseError(lineno, "expected 'state IDENT'");
            current = tokens[1];
            states.insert(tokens[1]);
        } else if (tokens[0] == "labels") {
            if (tokens.size() < 2) throw ParseError(lineno, "expected 'labels IDENT+'");
            for (size_t i = 1; i < tokens.size(); ++i) {
                if (!is_identifier(tokens[i]))
                    throw ParseError(lineno, "bad label name '" + tokens[i] + "'");
                labels.insert(tokens[i]);
            }
        } else {
            throw ParseError(lineno, "expected 'state', 'labels', or an indented transition");
        }
    }

    if (states.empty()) throw ParseError(0, "no states declared");
    if (labels.empty()) throw ParseError(0, "no labels declared or used");

    PA pa;
    pa.states.assign(states.begin(), states.end());
    pa.labels.assign(labels.begin(), labels.end());
    for (auto& t : raw) {
        auto& list = pa.transitions[{t.source, t.label}];
        if (std::find(list.begin(), list.end(), t.dist) == list.end())
            list.push_back(std::move(t.dist));
    }
    return pa;
}

PA parse_pa_text(const std::string& text) {
    std::istringstream in(text);
    return parse_pa(in);
}

std::string serialize_pa(const PA& pa) {
    std::set<Label> used;
    for (const auto& [key, list] : pa.transitions)
        if (!list.empty()) used.insert(key.second);

    std::string out;
    std::string unused_line;
    for (const Label& a : pa.labels) {
        if (!used.count(a)) unused_line += " " + a;
    }
    if (!unused_line.empty()) out += "labels" + unused_line + "\n";

    for (const StateId& s : pa.states) {
        out += "state " + s + "\n";
        for (const Label& a : pa.labels) {
            for (const Dist& d : pa.successors_of(s, a)) {
                out += "  " + a + " -> ";
                bool first = true;
                for (const auto& [t, p] : d.weights()) {
                    if (!first) out += ", ";
                    out += t + ":" + p.str();
                    first = false;
                }
                out += "\n";
            }
        }
    }
    return out;
}

}  // namespace pabisim
