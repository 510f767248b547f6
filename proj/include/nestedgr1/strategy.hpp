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

#include "nestedgr1/contract.hpp"
#include "nestedgr1/oracle.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nestedgr1 {

/// Lexicographic progress measure: (stack game, round, part, ring).
/// part 0 is an attractor ring toward the previous round, part 1 a ring of
/// the opponent's attractor inside a trap. Goal nodes have rank goal_rank.
using Rank = std::array<int, 4>;
inline constexpr Rank goal_rank{-1, -1, -1, -1};

/// Memoryless play for one (player, goal) stack over the explicit game.
struct StackStrategy {
    int player = 0;
    int goal_index = 0;
    NodeSet goal;
    std::size_t depth = 0;
    /// Per node: index of the stack game whose region holds it, -1 for goal
    /// nodes, -2 outside the cooperative winning set.
    std::vector<int> game_of;
    std::vector<PlayerSet> side_of;
    std::vector<Rank> rank;
    /// Strategist's successor, or -1 where the mover is not the strategist.
    std::vector<int> move;
    /// Successors open to a non-strategist mover: those lowering the rank.
    /// Inside a trap this is the obligation to head for the attractor.
    std::vector<std::vector<int>> permitted;
};

struct Strategy {
    OracleGame game;  // restricted to the cooperative winning set
    NodeSet coop;
    std::vector<StackStrategy> stacks;

    /// Index of the stack for (player, goal), or -1.
    int stack_index(int player, int goal_index) const;
    std::size_t goal_count(int player) const;
};

/// Converts the recorded rings of every stack into explicit strategies.
/// Throws std::logic_error if some region node has no rank.
Strategy extract_strategy(const SynthesisReport& report, const Expansion& ex);

enum class Policy { cooperative, adversarial, random, scripted };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);

struct SimulationConfig {
    int start = 0;
    std::size_t steps = 100;
    Policy policy = Policy::cooperative;
    std::uint64_t seed = 1;
    /// Successors chosen in turn by the free mover under Policy::scripted.
    std::vector<int> script;
};

struct PlayStep {
    int node = 0;
    int leader = 0;
    int goal_index = 0;
    bool achieved = false;
};

struct PlayTrace {
    std::vector<PlayStep> steps;
    /// Index of the first step of the repeated cycle, if one was detected.
    std::optional<std::size_t> lasso_start;
    /// (player, goal) pairs whose goal set meets the cycle.
    std::set<std::pair<int, int>> visited_in_cycle;
    /// (player, goal) pairs announced and achieved within the cycle.
    std::set<std::pair<int, int>> achieved_in_cycle;
    /// Longest wait, in moves, between an announcement and its achievement.
    std::size_t longest_wait = 0;
};

/// Plays the strategies from `start` with leader rotation: the leader's
/// current goal is announced, and once reached the next player leads with
/// its next goal. Stops at the step bound or when a cycle of the full play
/// state repeats under a deterministic policy.
PlayTrace simulate(const Strategy& s, const SimulationConfig& config);

struct ExhaustiveResult {
    bool ok = true;
    /// Maximum over stacks and start nodes of the moves needed to reach the goal.
    std::size_t worst_steps = 0;
    std::string failure;
};

/// Checks every stack against every non-strategist choice: from each node
/// of the cooperative winning set the goal must be reached within
/// |coop| * depth moves.
ExhaustiveResult check_exhaustive(const Strategy& s);

/// Graphviz rendering: player 0 circles, player 1 boxes, other players
/// diamonds; `highlight` edges drawn bold.
std::string to_dot(const ExplicitGame& g, const EdgeSet& highlight = {});

}  // namespace nestedgr1
