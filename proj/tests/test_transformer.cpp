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
#include "pabisim/transformer.hpp"
#include "test_util.hpp"

using namespace pabisim;
using namespace pabisim::testing;

TEST_CASE("stepping needs the whole support") {
    PA fig1 = load_figure("fig1.pa");
    CHECK(!can_step(fig1, d("x1:1/4,x2:1/4,x3:1/2"), "a"));
    CHECK(can_step(fig1, Dist::dirac("x2"), "a"));
    CHECK(!can_step(fig1, Dist::dirac("y3"), "a"));
    CHECK_THROWS_AS(can_step(fig1, Dist::dirac("nope"), "a"), InputError);
}

TEST_CASE("successor generators on the reference automaton") {
    PA fig1 = load_figure("fig1.pa");

    Lifted x0 = successors(fig1, Dist::dirac("x0"), "a");
    REQUIRE(!x0.is_bottom());
    CHECK(x0.poly().generators() == std::vector<Dist>{Dist::dirac("x1"), Dist::dirac("x3")});

    Lifted y_mix = successors(fig1, d("y1:1/2,y2:1/2"), "a");
    REQUIRE(!y_mix.is_bottom());
    CHECK(y_mix.poly().generators() ==
          std::vector<Dist>{d("y1:1/4,y2:3/4"), d("y2:1/2,y3:1/2")});

    CHECK(successors(fig1, d("x2:1/2,x3:1/2"), "a").is_bottom());
}

TEST_CASE("resolved steps") {
    PA fig1 = load_figure("fig1.pa");

    StepChoice y0_choice{{"y0", {Rat(1, 2), Rat(1, 2)}}};
    CHECK(step(fig1, Dist::dirac("y0"), "a", y0_choice) == d("y1:1/4,y2:1/4,y3:1/2"));

    StepChoice dirac_choice{{"x0", {Rat(1), Rat(0)}}};
    CHECK(step(fig1, Dist::dirac("x0"), "a", dirac_choice) == Dist::dirac("x1"));

    CHECK_THROWS_AS(step(fig1, Dist::dirac("y0"), "a",
                         StepChoice{{"y0", {Rat(1, 2), Rat(1, 4)}}}),
                    CoefficientError);
    CHECK_THROWS_AS(step(fig1, d("y0:1/2,y1:1/2"), "a", y0_choice), ChoiceError);
    CHECK_THROWS_AS(step(fig1, Dist::dirac("y0"), "a", StepChoice{{"y0", {Rat(1)}}}),
                    ArityError);

    // Any well-formed step lands in the successor hull.
    TestRng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        Dist xi = rng.dist_over(fig1.states);
        if (!can_step(fig1, xi, "a")) continue;
        StepChoice choice;
        for (const auto& [s, p] : xi.weights())
            choice[s] = rng.convex_tuple(fig1.successors_of(s, "a").size());
        Dist landed = step(fig1, xi, "a", choice);
        Lifted hull = successors(fig1, xi, "a");
        CHECK(conv_member(landed, hull.poly()));
    }
}

TEST_CASE("belief steps carry their query") {
    PA fig1 = load_figure("fig1.pa");
    BeliefStep live = belief_step(fig1, Dist::dirac("x0"), "a");
    CHECK(live.source == Dist::dirac("x0"));
    CHECK(live.label == "a");
    CHECK(!live.successors.is_bottom());

    BeliefStep dead = belief_step(fig1, Dist::dirac("x3"), "a");
    CHECK(dead.successors.is_bottom());
}

TEST_CASE("generator count honors the cap") {
    PA fig1 = load_figure("fig1.pa");
    Dist xi = d("x0:1/2,x1:1/2");  // 2 x 2 raw choices
    CHECK_THROWS_AS(successors(fig1, xi, "a", 3), CapacityError);
    CHECK(!successors(fig1, xi, "a", 4).is_bottom());
}

TEST_CASE("mixing commutes with stepping on pinned instances") {
    PA fig1 = load_figure("fig1.pa");
    CHECK(mix_law_check(fig1, Dist::dirac("y1"), Dist::dirac("y2"), Rat(1, 2), "a"));
    CHECK(mix_law_check(fig1, Dist::dirac("x1"), Dist::dirac("x3"), Rat(1, 2), "a"));
    CHECK(mix_law_check(fig1, Dist::dirac("x1"), Dist::dirac("x3"), Rat(1), "a"));

    // The mixed successor set is exactly the mix of the component sets.
    Lifted mixed = successors(fig1, d("y1:1/2,y2:1/2"), "a");
    Lifted composed = blackhole_combine(Rat(1, 2), successors(fig1, Dist::dirac("y1"), "a"),
                                        successors(fig1, Dist::dirac("y2"), "a"));
    CHECK(lifted_equal(mixed, composed));
}

TEST_CASE("mixing commutes with stepping on random instances") {
    TestRng rng(73);
    int bottoms = 0;
    for (const char* name : {"fig1.pa", "uv.pa"}) {
        PA pa = load_figure(name);
        for (int trial = 0; trial < 120; ++trial) {
            Dist xi1 = rng.dist_over(pa.states);
            Dist xi2 = rng.dist_over(pa.states);
            Rat p = rng.unit_rational();
            for (const Label& a : pa.labels) {
                CHECK(mix_law_check(pa, xi1, xi2, p, a));
                if (successors(pa, convex_combine({p, Rat::one() - p}, {xi1, xi2}), a)
                        .is_bottom())
                    ++bottoms;
            }
        }
    }
    CHECK(bottoms >= 20);
}

TEST_CASE("choice enumeration agrees with the binary fold") {
    TestRng rng(79);
    for (const char* name : {"fig1.pa", "uv.pa"}) {
        PA pa = load_figure(name);
        for (int trial = 0; trial < 40; ++trial) {
            Dist xi = rng.dist_over(pa.states);
            for (const Label& a : pa.labels)
                CHECK(lifted_equal(successors(pa, xi, a), successors_by_fold(pa, xi, a)));
        }
    }
}

TEST_CASE("bottom iff cannot step") {
    TestRng rng(83);
    PA fig1 = load_figure("fig1.pa");
    for (int trial = 0; trial < 60; ++trial) {
        Dist xi = rng.dist_over(fig1.states);
        CHECK(successors(fig1, xi, "a").is_bottom() == !can_step(fig1, xi, "a"));
    }
}
