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
#include "nestedgr1/formula.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nestedgr1 {

/// Raised when a specification violates a structural invariant.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Set of player indices, bit k for player k.
using PlayerSet = std::uint32_t;

inline PlayerSet single_player(int j) { return PlayerSet{1} << j; }
inline bool contains_player(PlayerSet s, int j) { return (s >> j) & 1u; }
inline PlayerSet all_players(std::size_t n) { return n >= 32 ? ~PlayerSet{0} : (PlayerSet{1} << n) - 1; }

/**
 * Boolean variables of a game and their placement in the store.
 *
 * Store order: turn bits first, then the shared block, then one block per
 * player; every primed variable sits right after its unprimed partner.
 * Shared variables are written by whichever player moves, like the turn
 * index itself. They are used by the explicit-graph encoding.
 */
class VariableTable {
public:
    static constexpr int turn_owner = -2;
    static constexpr int shared_owner = -1;

    struct Variable {
        std::string name;
        int owner;
        unsigned unprimed;
        unsigned primed;
    };

    VariableTable() = default;
    VariableTable(std::size_t players, std::vector<std::vector<std::string>> owned,
                  std::vector<std::string> shared = {});

    std::size_t players() const { return players_; }
    unsigned turn_bits() const { return turn_bits_; }
    unsigned num_store_vars() const { return static_cast<unsigned>(vars_.size() * 2); }

    const std::vector<std::string>& owned(int j) const { return owned_.at(static_cast<std::size_t>(j)); }
    const std::vector<std::string>& shared() const { return shared_; }

    /// Turn bits first (least significant bit of i first), then the rest.
    const std::vector<Variable>& variables() const { return vars_; }
    const Variable* find(std::string_view name) const;

    const std::vector<unsigned>& unprimed() const { return unprimed_; }
    const std::vector<unsigned>& primed() const { return primed_; }
    const std::vector<unsigned>& turn_unprimed() const { return turn_unprimed_; }
    const std::vector<unsigned>& turn_primed() const { return turn_primed_; }
    std::vector<unsigned> unprimed_of(int owner) const;
    std::vector<unsigned> primed_of(int owner) const;

    bool operator==(const VariableTable& o) const
    {
        return players_ == o.players_ && owned_ == o.owned_ && shared_ == o.shared_;
    }

private:
    std::size_t players_ = 0;
    unsigned turn_bits_ = 0;
    std::vector<std::vector<std::string>> owned_;
    std::vector<std::string> shared_;
    std::vector<Variable> vars_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<unsigned> unprimed_, primed_, turn_unprimed_, turn_primed_;
};

/// Raw action of one player over unprimed variables and its own primed variables.
struct RawAction {
    int player = 0;
    Formula formula = Formula::constant(true);

    bool operator==(const RawAction& o) const { return player == o.player && formula == o.formula; }
};

/**
 * GR(1) objective of one player in strict-implication form:
 * env_safety and the env recurrences are assumed, sys_safety and the sys
 * recurrences are guaranteed. Recurrences are node predicates.
 */
struct Gr1Objective {
    int player = 0;
    Predicate env_safety;
    std::vector<Predicate> env_recurrences;
    Predicate sys_safety;
    std::vector<Predicate> sys_recurrences;
};

/// One sub-game of a nested contract.
struct GameStackEntry {
    int player = 0;           // strategist; for n > 2 see `side`
    PlayerSet side = 0;       // players acting as the strategist
    Predicate region;         // nodes where this game is in effect
    Predicate target;         // reaching this exits the game upward
    std::vector<Predicate> assumptions;  // recurrence predicates (trap -> attr)
};

/// Explicit game graph: node names, owner per node, edges, dense goal lists.
struct ExplicitGame {
    std::size_t players = 2;
    std::vector<std::string> names;
    std::vector<int> owner;
    std::set<std::pair<int, int>> edges;
    /// goals[j][k] is the k-th recurrence goal of player j.
    std::vector<std::vector<std::set<int>>> goals;

    std::size_t size() const { return names.size(); }
    int index_of(std::string_view name) const;
    std::vector<std::vector<int>> successors() const;
    std::vector<std::vector<int>> predecessors() const;

    bool operator==(const ExplicitGame& o) const
    {
        return players == o.players && names == o.names && owner == o.owner && edges == o.edges && goals == o.goals;
    }
};

/// Throws SpecError unless every edge alternates turns and goals are in range.
void validate(const ExplicitGame& g);

/// Parsed textual specification, before compilation into a store.
struct GameSpec {
    VariableTable table;
    std::vector<RawAction> actions;            // one per player, in player order
    std::vector<std::vector<Formula>> goals;   // goals[j][k], node formulas
    std::optional<Formula> domain;             // node-space restriction, if any
    /// Present when the spec was encoded from an explicit graph.
    std::optional<ExplicitGame> explicit_source;

    bool operator==(const GameSpec& o) const
    {
        return table == o.table && actions == o.actions && goals == o.goals && domain == o.domain;
    }
};

enum class FormulaMode {
    node,    // no primed variables
    action,  // primes allowed on the acting player's variables and shared ones
    edge,    // primes allowed anywhere
};

/// Compiles a parsed formula into the store laid out by `table`.
/// `player` selects the acting player in FormulaMode::action.
Predicate compile_formula(const Formula& f, const VariableTable& table, Store& store, FormulaMode mode,
                          int player = -1);

/// Parses and compiles in one step.
Predicate parse_formula(std::string_view text, const VariableTable& table, Store& store,
                        FormulaMode mode = FormulaMode::edge, int player = -1);

/// Predicate i = k over the turn bits.
Predicate turn_is(const VariableTable& table, Store& store, int k, bool primed = false);

/// Parses the `.sg` symbolic format.
GameSpec parse_symbolic_spec(std::string_view text);
/// Parses the `.xg` explicit graph format.
ExplicitGame parse_explicit_game(std::string_view text);
/// Parses either format; explicit graphs are encoded with encode_explicit.
GameSpec parse_game_spec(std::string_view text);

std::string serialize_symbolic_spec(const GameSpec& spec);
std::string serialize_explicit_game(const ExplicitGame& g);

/// Binary encoding of an explicit graph: a shared position block of
/// ceil(log2 |nodes|) bits, written by the moving player, plus the turn index.
GameSpec encode_explicit(const ExplicitGame& g);

/// Name of the shared position bit b in explicit encodings.
std::string position_bit_name(unsigned b);
unsigned position_bits(std::size_t nodes);

}  // namespace nestedgr1
