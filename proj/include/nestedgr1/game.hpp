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

#include "nestedgr1/bdd.hpp"
#include "nestedgr1/spec.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace nestedgr1 {

/**
 * Interleaving game over a variable table.
 *
 * lifted[j] is ite(i != j, x_j' = x_j, raw[j] & i' = i + 1 mod n). The joint
 * relation is the conjunction of all lifted relations, restricted to the node
 * domain on both sides.
 */
struct GameStructure {
    std::shared_ptr<Store> store;
    VariableTable table;
    std::vector<Predicate> raw;
    std::vector<Predicate> lifted;
    Predicate transition;
    Predicate sigma;
    /// goals[j][k] as node predicates; may be empty for a player.
    std::vector<std::vector<Predicate>> goals;
    std::optional<ExplicitGame> explicit_source;

    Predicate unprimed_cube;
    Predicate primed_cube;
    RenameMap to_primed;
    RenameMap to_unprimed;
    /// turn[j] is the node predicate i = j.
    std::vector<Predicate> turn;

    std::size_t players() const { return table.players(); }

    Predicate prime(const Predicate& p) const { return store->rename(p, to_primed); }
    Predicate unprime(const Predicate& p) const { return store->rename(p, to_unprimed); }

    /// Conjunction of the lifted relations of every player except j.
    Predicate others(int j) const;

    /// Number of nodes of the domain in p.
    double node_count(const Predicate& p) const;

    /// True iff p mentions no primed variable.
    bool is_node_predicate(const Predicate& p) const;
};

/// Compiles a spec into a game. Throws ParseError or SpecError on invalid input.
GameStructure build_game(const GameSpec& spec, std::size_t node_limit = Store::default_node_limit);

/// Lifts already compiled raw actions. `raw.size()` must equal the player count.
GameStructure build_game(std::shared_ptr<Store> store, const VariableTable& table, std::vector<Predicate> raw,
                         Predicate domain, std::vector<std::vector<Predicate>> goals = {});

/// Same game with every lifted relation, the joint relation and the domain
/// cut down to C and C'.
GameStructure restrict_game(const GameStructure& g, const Predicate& coop);

/// Goals of player j, or {sigma} if the player declared none.
std::vector<Predicate> effective_goals(const GameStructure& g, int j);

/// Strict-implication objective of each player: the others' relations are
/// assumed, the own relation and recurrence goals are guaranteed.
std::vector<Gr1Objective> build_objectives(const GameStructure& g);

/**
 * Enumerated form of a symbolic game. Node k corresponds to assignments[k]
 * over GameStructure::table.unprimed(). For games encoded from an explicit
 * graph, node k is the node with index k of the source graph.
 */
struct Expansion {
    ExplicitGame game;
    std::vector<std::vector<bool>> assignments;

    std::set<int> set_of(const GameStructure& g, const Predicate& p) const;
    Predicate predicate_of(const GameStructure& g, const std::set<int>& nodes) const;
    int node_of(const std::vector<bool>& unprimed_values) const;
};

inline constexpr std::size_t default_expansion_limit = std::size_t{1} << 20;

/// Throws ResourceError if the domain has more than `limit` nodes.
Expansion expand_explicit(const GameStructure& g, std::size_t limit = default_expansion_limit);

}  // namespace nestedgr1
