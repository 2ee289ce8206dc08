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

#include <doctest.h>

#include "oracles.hpp"
#include "pabisim/errors.hpp"
#include "pabisim/model.hpp"
#include "test_util.hpp"

using namespace pabisim;
using namespace pabisim::testing;

TEST_CASE("rationals parse and print canonically") {
    CHECK(Rat::parse("1/2")->str() == "1/2");
    CHECK(Rat::parse("3")->str() == "3");
    CHECK(Rat::parse("-2/4")->str() == "-1/2");
    CHECK(Rat::parse("6/3")->str() == "2");
    CHECK(!Rat::parse("1/0"));
    CHECK(!Rat::parse("1.5"));
    CHECK(!Rat::parse(""));
    CHECK(!Rat::parse("1/-2"));
    CHECK(!Rat::parse("+5"));
    CHECK(!Rat::parse(" 1"));
    CHECK(!Rat::parse("1 "));
    CHECK(Rat::parse("99999999999999999999999999/3")->str() == "33333333333333333333333333");
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
    CHECK(Rat(1, 3) < Rat(1, 2));
}

TEST_CASE("fig1 parses to the reference automaton") {
    PA pa = load_figure("fig1.pa");
    CHECK(pa.states == std::vector<StateId>{"x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"});
    CHECK(pa.labels == std::vector<Label>{"a"});

    size_t listed = 0;
    for (const auto& [key, list] : pa.transitions) listed += list.size();
    CHECK(listed == 10);
    CHECK(pa.transitions.size() == 6);

    CHECK(pa.successors_of("x1", "a") ==
          std::vector<Dist>{d("x1:1/2,x2:1/2"), d("x3:1/2,x2:1/2")});
    CHECK(pa.successors_of("x3", "a").empty());
    CHECK(pa.successors_of("y0", "a") == std::vector<Dist>{d("y1:1/2,y2:1/2"), d("y3:1")});
}

TEST_CASE("minimal files and parse errors") {
    PA pa = parse_pa_text("state s\n  a -> s:1\n");
    CHECK(pa.states == std::vector<StateId>{"s"});
    CHECK(pa.labels == std::vector<Label>{"a"});
    CHECK(pa.successors_of("s", "a") == std::vector<Dist>{Dist::dirac("s")});

    CHECK_THROWS_AS(parse_pa_text("state s\n  a -> s:1/2\n"), SumError);
    try {
        parse_pa_text("state s\n  a -> s:1/2\n");
    } catch (const SumError& e) {
        CHECK(e.line == 2);
    }

    CHECK_THROWS_AS(parse_pa_text("state s\n  a -> s:1/2, s:1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_pa_text("state s\n  a -> s:0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_pa_text("state s\n"), ParseError);          // no labels
    CHECK_THROWS_AS(parse_pa_text("  a -> s:1\n"), ParseError);       // orphan transition
    CHECK_THROWS_AS(parse_pa_text("states s\n"), ParseError);         // unknown keyword
    CHECK_THROWS_AS(parse_pa_text(""), ParseError);                   // no states

    // Comments and duplicate transitions.
    PA pb = parse_pa_text("# intro\nstate s # trailing\n  a -> s:1\n  a -> s:1\n");
    CHECK(pb.successors_of("s", "a").size() == 1);
}

TEST_CASE("convex_combine matches its defining arithmetic") {
    Dist y1 = Dist::dirac("y1"), y2 = Dist::dirac("y2");
    CHECK(convex_combine({Rat(1, 2), Rat(1, 2)}, {y1, y2}) == d("y1:1/2,y2:1/2"));

    Dist phi = d("a:1/3,b:2/3"), psi = d("c:1");
    CHECK(convex_combine({Rat(0), Rat(1)}, {phi, psi}) == psi);

    Dist abc = convex_combine({Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                              {Dist::dirac("a"), Dist::dirac("b"), Dist::dirac("c")});
    CHECK(abc == d("a:1/3,b:1/3,c:1/3"));

    CHECK_THROWS_AS(convex_combine({Rat(1, 2)}, {phi, psi}), ArityError);
    CHECK_THROWS_AS(convex_combine({Rat(1, 2), Rat(1, 4)}, {phi, psi}), CoefficientError);
    CHECK_THROWS_AS(convex_combine({Rat(3, 2), Rat(-1, 2)}, {phi, psi}), CoefficientError);
}

TEST_CASE("n-ary combine equals the recursive binary decomposition") {
    TestRng rng(7);
    std::vector<StateId> states{"a", "b", "c", "d"};
    for (int trial = 0; trial < 100; ++trial) {
        size_t k = static_cast<size_t>(rng.next(2, 4));
        std::vector<Rat> ps = rng.convex_tuple(k);
        if (ps.back().is_one()) continue;
        std::vector<Dist> xs;
        for (size_t i = 0; i < k; ++i) xs.push_back(rng.dist_over(states));

        // Peel the last coefficient, renormalizing the prefix.
        Rat rest = Rat::one() - ps.back();
        std::vector<Rat> prefix(ps.begin(), ps.end() - 1);
        for (Rat& p : prefix) p = p / rest;
        Dist inner = convex_combine(prefix, std::vector<Dist>(xs.begin(), xs.end() - 1));
        Dist nested = convex_combine({rest, ps.back()}, {inner, xs.back()});

        CHECK(convex_combine(ps, xs) == nested);
    }
}

TEST_CASE("projection and barycenter hold for convex_combine") {
    TestRng rng(11);
    std::vector<StateId> states{"a", "b", "c", "d"};
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = static_cast<size_t>(rng.next(1, 3));
        size_t m = static_cast<size_t>(rng.next(1, 3));
        std::vector<Rat> ps = rng.convex_tuple(n);
        std::vector<std::vector<Rat>> qs;
        for (size_t i = 0; i < n; ++i) qs.push_back(rng.convex_tuple(m));
        std::vector<Dist> xs;
        for (size_t j = 0; j < m; ++j) xs.push_back(rng.dist_over(states));

        std::vector<Dist> inner;
        for (size_t i = 0; i < n; ++i) inner.push_back(convex_combine(qs[i], xs));
        Dist lhs = convex_combine(ps, inner);

        std::vector<Rat> rs(m, Rat::zero());
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < n; ++i) rs[j] += ps[i] * qs[i][j];
        CHECK(lhs == convex_combine(rs, xs));

        size_t j = static_cast<size_t>(rng.next(0, static_cast<long>(m) - 1));
        std::vector<Rat> proj(m, Rat::zero());
        proj[j] = Rat::one();
        CHECK(convex_combine(proj, xs) == xs[j]);
    }
}

TEST_CASE("serialization round-trips and stays exact") {
    PA fig1 = load_figure("fig1.pa");
    CHECK(parse_pa_text(serialize_pa(fig1)) == fig1);

    PA uv = load_figure("uv.pa");
    CHECK(parse_pa_text(serialize_pa(uv)) == uv);

    PA one = parse_pa_text("state s\n  a -> s:1\n");
    CHECK(serialize_pa(one) == "state s\n  a -> s:1\n");

    CHECK(serialize_pa(fig1).find("1/2") != std::string::npos);
    CHECK(serialize_pa(fig1).find('.') == std::string::npos);

    // Unused labels survive the round trip via an explicit labels line.
    PA lonely = parse_pa_text("labels a b\nstate s\n  a -> s:1\n");
    CHECK(serialize_pa(lonely) == "labels b\nstate s\n  a -> s:1\n");
    CHECK(parse_pa_text(serialize_pa(lonely)) == lonely);
}

TEST_CASE("every parsed transition distribution sums to one") {
    for (const char* name : {"fig1.pa", "uv.pa"}) {
        PA pa = load_figure(name);
        for (const auto& [key, list] : pa.transitions) {
            for (const Dist& dd : list) {
                Rat total;
                for (const auto& [s, p] : dd.weights()) {
                    CHECK(p.sign() > 0);
                    total += p;
                }
                CHECK(total.is_one());
            }
        }
    }
}

TEST_CASE("malformed files throw instead of crashing") {
    TestRng rng(113);
    const std::string alphabet = "abx01:/,-> \t#\n";
    for (int trial = 0; trial < 300; ++trial) {
        std::string text;
        long len = rng.next(0, 60);
        for (long i = 0; i < len; ++i)
            text += alphabet[static_cast<size_t>(
                rng.next(0, static_cast<long>(alphabet.size()) - 1))];
        try {
            PA pa = parse_pa_text(text);
            CHECK(!pa.states.empty());
            CHECK(!pa.labels.empty());
            CHECK(parse_pa_text(serialize_pa(pa)) == pa);
        } catch (const ParseError&) {
        } catch (const SumError&) {
        }
    }
}

TEST_CASE("distribution literals") {
    CHECK(d("x1:1/2,x2:1/2").literal() == "x1:1/2,x2:1/2");
    CHECK(d("x2:1/2,x1:1/2").literal() == "x1:1/2,x2:1/2");
    CHECK(d("s").literal() == "s:1");
    CHECK(!Dist::parse_literal("x:1/2"));
    CHECK(!Dist::parse_literal("x:1/2,x:1/2"));
    CHECK(!Dist::parse_literal("x:-1,y:2"));
    CHECK(!Dist::parse_literal(""));
}
