/*
 * Copyright 2026 The nestedgr1 Authors
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


#include "nestedgr1/fixpoint_ops.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace nestedgr1;

namespace {

NodeSet random_subset(std::mt19937_64& rng, std::size_t n)
{
    NodeSet s;
    for (std::size_t u = 0; u < n; ++u)
        if (rng() % 3 == 0) s.insert(static_cast<int>(u));
    return s;
}

PlayerSet random_coalition(std::mt19937_64& rng, std::size_t players)
{
    PlayerSet c = 0;
    while (c == 0 || c == all_players(players)) c = static_cast<PlayerSet>(rng() % (1u << players));
    return c;
}

}  // namespace

TEST_CASE("symbolic operators match the explicit reference")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        auto eg = testing::random_game(rng);
        OracleGame og(eg);
        auto [g, ex] = testing::encode(eg);
        auto f = random_subset(rng, eg.size());
        auto s = random_subset(rng, eg.size());
        auto fp = ex.predicate_of(g, f);
        auto sp = ex.predicate_of(g, s);
        auto coal = random_coalition(rng, eg.players);
        int j = static_cast<int>(rng() % eg.players);

        CHECK(ex.set_of(g, pre(g, fp)) == explicit_ops::pre(og, f));
        CHECK(ex.set_of(g, pre(g, j, fp)) == explicit_ops::pre(og, j, f));
        CHECK(ex.set_of(g, pre_star(g, fp)) == explicit_ops::pre_star(og, f));
        CHECK(ex.set_of(g, cpre(g, coal, fp)) == explicit_ops::cpre(og, coal, f));
        CHECK(ex.set_of(g, attr(g, coal, fp)) == explicit_ops::attr(og, coal, f));
        CHECK(ex.set_of(g, trap(g, coal, sp, fp)) == explicit_ops::trap(og, coal, s, f));
    }
}

TEST_CASE("attractor rings grow from the target")
{
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        auto eg = testing::random_game(rng);
        auto [g, ex] = testing::encode(eg);
        auto f = ex.predicate_of(g, random_subset(rng, eg.size()));
        std::vector<Predicate> rings;
        OpCounters counters;
        auto a = attr(g, 0, f, &rings, &counters);
        if (rings.empty()) {
            CHECK(a.is_false());
            continue;
        }
        CHECK((f & g.sigma).subset_of(rings.front()));
        CHECK(rings.back() == a);
        for (std::size_t k = 1; k < rings.size(); ++k) {
            CHECK(rings[k - 1].subset_of(rings[k]));
            CHECK(rings[k - 1] != rings[k]);
        }
        CHECK(counters.cpre == rings.size() + 1);
    }
}

TEST_CASE("operators on the weak-fairness game")
{
    auto eg = testing::load_fixture("weak_fairness.xg");
    auto [g, ex] = testing::encode(eg);
    auto set = [&](std::initializer_list<const char*> names) {
        NodeSet s;
        for (const auto* n : names) s.insert(eg.index_of(n));
        return s;
    };
    auto p = [&](std::initializer_list<const char*> names) { return ex.predicate_of(g, set(names)); };

    CHECK(ex.set_of(g, pre(g, 0, p({"s6"}))) == set({"s5"}));
    CHECK(ex.set_of(g, pre_star(g, p({"s6"}))) == set({"s0", "s1", "s2", "s3", "s4", "s5", "s6"}));
    // s4 belongs to player 1, who can leave toward s1.
    auto c = ex.set_of(g, cpre(g, 0, p({"s5", "s6"})));
    CHECK(c.count(eg.index_of("s4")) == 0);
    // The isolated node s7 is a deadlocked opponent node, attracted vacuously.
    CHECK(ex.set_of(g, attr(g, 0, p({"s6"}))) == set({"s5", "s6", "s7"}));
    CHECK(ex.set_of(g, attr(g, 1, p({"s5", "s6"}))) == set({"s4", "s5", "s6"}));
    CHECK(ex.set_of(g, trap(g, 0, p({"s4", "s5", "s6"}), p({"s5", "s6"}))) == set({"s5", "s6"}));

    // Restricted to the nodes that keep moving, the attractor matches the walkthrough.
    auto live = restrict_game(g, p({"s0", "s1", "s2", "s3", "s4", "s5", "s6"}));
    CHECK(ex.set_of(live, attr(live, 0, p({"s6"}))) == set({"s5", "s6"}));
}

TEST_CASE("primed operands are rejected")
{
    auto eg = testing::load_fixture("safety.xg");
    auto [g, ex] = testing::encode(eg);
    CHECK_THROWS_AS(pre(g, g.transition), std::invalid_argument);
    CHECK_THROWS_AS(cpre(g, 0, g.transition), std::invalid_argument);
}
