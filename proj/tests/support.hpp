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

#pragma once

#include "nestedgr1/game.hpp"
#include "nestedgr1/oracle.hpp"
#include "nestedgr1/spec.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace nestedgr1::testing {

inline std::string fixture_path(const std::string& name)
{
    return std::string(NESTEDGR1_SOURCE_DIR) + "/fixtures/" + name;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline ExplicitGame load_fixture(const std::string& name)
{
    return parse_explicit_game(read_file(fixture_path(name)));
}

struct RandomGameConfig {
    std::size_t max_nodes = 32;
    std::size_t max_players = 3;
    std::size_t max_goals = 3;
    /// Out-degree is drawn from [min_degree, max_degree]; 0 allows deadlocks.
    std::size_t min_degree = 0;
    std::size_t max_degree = 3;
    std::size_t min_goals = 0;
};

/// Random turn-alternating game: every edge goes from a node of player j to
/// a node of player j+1 mod n.
inline ExplicitGame random_game(std::mt19937_64& rng, const RandomGameConfig& c = {})
{
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    ExplicitGame g;
    g.players = uniform(2, c.max_players);
    auto n = uniform(g.players, c.max_nodes);
    // Every player owns at least one node so that edges exist on each turn.
    for (std::size_t u = 0; u < n; ++u) {
        g.names.push_back("v" + std::to_string(u));
        g.owner.push_back(static_cast<int>(u < g.players ? u : uniform(0, g.players - 1)));
    }
    std::vector<std::vector<int>> by_owner(g.players);
    for (std::size_t u = 0; u < n; ++u) by_owner[static_cast<std::size_t>(g.owner[u])].push_back(static_cast<int>(u));
    for (std::size_t u = 0; u < n; ++u) {
        const auto& next = by_owner[(static_cast<std::size_t>(g.owner[u]) + 1) % g.players];
        auto degree = uniform(c.min_degree, c.max_degree);
        for (std::size_t d = 0; d < degree; ++d)
            g.edges.insert({static_cast<int>(u), next[uniform(0, next.size() - 1)]});
    }
    g.goals.resize(g.players);
    for (auto& goals : g.goals) {
        auto count = uniform(c.min_goals, c.max_goals);
        for (std::size_t k = 0; k < count; ++k) {
            std::set<int> goal;
            for (std::size_t u = 0; u < n; ++u)
                if (uniform(0, 3) == 0) goal.insert(static_cast<int>(u));
            if (goal.empty()) goal.insert(static_cast<int>(uniform(0, n - 1)));
            goals.push_back(goal);
        }
    }
    return g;
}

/// Symbolic game of an explicit graph together with its expansion.
struct Encoded {
    GameStructure game;
    Expansion ex;
};

inline Encoded encode(const ExplicitGame& g)
{
    auto s = build_game(encode_explicit(g));
    auto ex = expand_explicit(s);
    return {std::move(s), std::move(ex)};
}

}  // namespace nestedgr1::testing
