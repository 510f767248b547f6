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


#include "nestedgr1/closure.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace nestedgr1;

TEST_CASE("schedule names")
{
    for (auto s : {Schedule::flat, Schedule::grouped, Schedule::iterated}) CHECK(parse_schedule(to_string(s)) == s);
    CHECK_THROWS_AS(parse_schedule("fast"), std::invalid_argument);
}

TEST_CASE("schedules agree with the explicit cooperative set")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto eg = testing::random_game(rng);
        auto [g, ex] = testing::encode(eg);
        auto goals = all_goals(g);
        auto flat = coop_flat(g, goals);
        auto grouped = coop_grouped(g, goals);
        auto iterated = coop_iterated(g, goals);
        CHECK(flat.coop == grouped.coop);
        CHECK(flat.coop == iterated.coop);
        CHECK(ex.set_of(g, flat.coop) == coop_explicit(OracleGame(eg)));
        CHECK(flat.rho_c == (flat.coop & g.prime(flat.coop)));
    }
}

TEST_CASE("iterated closure shrinks strictly and never loses the cooperative set")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto eg = testing::random_game(rng);
        auto [g, ex] = testing::encode(eg);
        auto r = coop_iterated(g, all_goals(g));
        REQUIRE_FALSE(r.iterations.empty());
        CHECK(r.iterations.front() == g.sigma);
        CHECK(r.iterations.back() == r.coop);
        for (std::size_t k = 0; k < r.iterations.size(); ++k) {
            CHECK(r.coop.subset_of(r.iterations[k]));
            if (k > 0) CHECK(g.node_count(r.iterations[k]) < g.node_count(r.iterations[k - 1]));
        }
    }
}

TEST_CASE("player closure is idempotent and monotone")
{
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        auto eg = testing::random_game(rng);
        auto [g, ex] = testing::encode(eg);
        auto goals = effective_goals(g, 0);
        auto once = player_closure(g, g.sigma, goals);
        CHECK(player_closure(g, once, goals) == once);
        CHECK(once.subset_of(g.sigma));
    }
}

TEST_CASE("lack of closure: restriction drops the edge into the c-d loop")
{
    auto eg = testing::load_fixture("lack_of_closure.xg");
    auto [g, ex] = testing::encode(eg);
    auto r = compute_coop(g, all_goals(g), Schedule::grouped);
    NodeSet expected{eg.index_of("a"), eg.index_of("b"), eg.index_of("e"), eg.index_of("f")};
    CHECK(ex.set_of(g, r.coop) == expected);
    auto b = ex.predicate_of(g, {eg.index_of("b")});
    auto c = ex.predicate_of(g, {eg.index_of("c")});
    CHECK_FALSE((g.transition & b & g.prime(c)).is_false());
    CHECK((g.transition & r.rho_c & b & g.prime(c)).is_false());
}

TEST_CASE("restriction augments both sides of every contract")
{
    auto eg = testing::load_fixture("lack_of_closure.xg");
    auto [g, ex] = testing::encode(eg);
    auto coop = compute_coop(g, all_goals(g), Schedule::flat);
    auto [r, contracts] = restrict_and_augment(g, coop, build_objectives(g));
    CHECK(r.sigma == (coop.coop & g.sigma));
    for (const auto& o : contracts) {
        CHECK(o.env_safety.subset_of(coop.rho_c));
        CHECK(o.sys_safety.subset_of(coop.rho_c));
    }
}

TEST_CASE("unsatisfiable goals are reported")
{
    // Player 0's goal lies on a dead end.
    auto eg = parse_explicit_game("players 2\nplayer 0 nodes: a\nplayer 1 nodes: b c\nedge a b\nedge b a\n"
                                  "edge a c\ngoal 0 0: c\n");
    auto [g, ex] = testing::encode(eg);
    auto coop = compute_coop(g, all_goals(g), Schedule::iterated);
    CHECK(coop.coop.is_false());
    CHECK_THROWS_AS(restrict_and_augment(g, coop, build_objectives(g)), UnsatisfiableGoals);
}
