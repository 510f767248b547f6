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

#include "nestedgr1/closure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nestedgr1 {

/**
 * One round of assumption construction for a side j and a goal:
 * A = Attr_j(goal), B = Attr_other(A), r = Trap_j(B, A) & B & !A.
 * The assumption is the recurrence of (r -> A).
 */
struct AssumptionStep {
    Predicate attr;
    Predicate escape;
    Predicate trap;
    Predicate assumption;
    /// Rings of A toward the goal, and of B toward A (rings[0] is the base).
    std::vector<Predicate> attr_rings;
    std::vector<Predicate> escape_rings;
};

AssumptionStep unconditional_assumption(const GameStructure& g, PlayerSet side, const Predicate& goal,
                                        OpCounters* counters = nullptr);

/// A stack entry together with every round that built it, the final round
/// (with an empty trap) included.
struct StackGame {
    GameStackEntry entry;
    std::vector<AssumptionStep> steps;
};

/// Games for one (player, goal) pair; index 0 targets the goal itself and
/// each later game targets the covered set of the previous one.
struct GoalStack {
    int player = 0;
    int goal_index = 0;
    Predicate goal;
    std::vector<StackGame> games;
    std::size_t cpre_calls = 0;

    std::size_t depth() const { return games.size(); }
};

/// The stacks of every (player, goal) pair and the safety augmentation.
struct NestedContract {
    std::vector<GoalStack> stacks;
    Predicate rho_c;
};

/// Raised when game_stack is called with inputs that violate its preconditions.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Builds one stack. `g` must already be restricted to the cooperative
/// winning set, with goal and uncovered contained in it.
GoalStack game_stack(const GameStructure& g, int player, const Predicate& goal, const Predicate& uncovered,
                     OpCounters* counters = nullptr);

struct SynthesisReport {
    std::vector<Gr1Objective> contracts;
    NestedContract contract;
    CoopResult coop;
    std::optional<GameStructure> restricted;
    std::size_t cpre_calls = 0;
    std::size_t max_depth = 0;
    std::vector<std::string> diagnostics;
    bool satisfiable = true;
};

/// Closure, restriction and one stack per (player, goal). Goal stacks need
/// two sides; with more than two players the others act as one side.
SynthesisReport synthesize(const GameStructure& g, Schedule schedule = Schedule::grouped);

}  // namespace nestedgr1
