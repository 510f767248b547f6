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

#include "nestedgr1/fixpoint_ops.hpp"

#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace nestedgr1 {

enum class Schedule { flat, grouped, iterated };

std::string_view to_string(Schedule s);
/// Throws std::invalid_argument on an unknown name.
Schedule parse_schedule(std::string_view name);

/// Cooperative winning set and its edge restriction C & C'.
struct CoopResult {
    Predicate coop;
    Predicate rho_c;
    Schedule schedule = Schedule::flat;
    /// Outer iterates, starting with the node domain. Decreasing.
    std::vector<Predicate> iterations;
};

/// Raised when no node admits a play satisfying every goal.
class UnsatisfiableGoals : public std::runtime_error {
public:
    UnsatisfiableGoals() : std::runtime_error("goals cooperatively unsatisfiable") {}
};

using GoalTable = std::vector<std::vector<Predicate>>;

/// effective_goals for every player.
GoalTable all_goals(const GameStructure& g);

/// nu Z. AND_j AND_r Pre*(G_jr & Pre(Z)).
CoopResult coop_flat(const GameStructure& g, const GoalTable& goals, OpCounters* counters = nullptr);
/// nu Z. AND_j nu Z_j. Z & AND_r Pre*(G_jr & Pre(Z_j)).
CoopResult coop_grouped(const GameStructure& g, const GoalTable& goals, OpCounters* counters = nullptr);
/// Q^0 = domain, Q^{k+1} = AND_j closure_j(Q^k), until stable.
CoopResult coop_iterated(const GameStructure& g, const GoalTable& goals, OpCounters* counters = nullptr);

CoopResult compute_coop(const GameStructure& g, const GoalTable& goals, Schedule s, OpCounters* counters = nullptr);

/// nu Z. Q & AND_r Pre*(G_r & Pre(Z)) for one player's goals.
Predicate player_closure(const GameStructure& g, const Predicate& q, const std::vector<Predicate>& goals,
                         OpCounters* counters = nullptr);

/// Restricts every relation to C & C' and adds C & C' to both the assumed
/// and the guaranteed safety of every objective. Throws UnsatisfiableGoals
/// if C is empty.
std::pair<GameStructure, std::vector<Gr1Objective>> restrict_and_augment(const GameStructure& g,
                                                                        const CoopResult& coop,
                                                                        std::vector<Gr1Objective> objectives);

}  // namespace nestedgr1
