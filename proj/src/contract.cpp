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

#include "nestedgr1/contract.hpp"

#include <algorithm>
#include <bit>

namespace nestedgr1 {

namespace {

int lowest_player(PlayerSet s) { return std::countr_zero(s); }

}  // namespace

AssumptionStep unconditional_assumption(const GameStructure& g, PlayerSet side, const Predicate& goal,
                                        OpCounters* counters)
{
    if ((goal & g.sigma).is_false()) throw std::invalid_argument("assumption goal is empty");
    AssumptionStep s;
    s.attr = attr(g, side, goal, &s.attr_rings, counters);
    s.escape = attr(g, opponents(g, side), s.attr, &s.escape_rings, counters);
    s.trap = trap(g, side, s.escape, s.attr, counters) & s.escape & !s.attr;
    s.assumption = ((!s.trap) | s.attr) & g.sigma;
    return s;
}

GoalStack game_stack(const GameStructure& g, int player, const Predicate& goal, const Predicate& uncovered,
                     OpCounters* counters)
{
    OpCounters local;
    auto* c = counters ? counters : &local;
    auto cpre_before = c->cpre;

    if (!goal.subset_of(g.sigma) || !uncovered.subset_of(g.sigma))
        throw PreconditionError("goal and uncovered set must lie in the restricted node domain");
    if ((goal & g.sigma).is_false()) throw PreconditionError("goal is empty");
    // In a game restricted to its cooperative winning set every node reaches
    // every goal; otherwise attractors could leave the covered set for good.
    if (!uncovered.subset_of(pre_star(g, goal, c)))
        throw PreconditionError("relations are not restricted to the cooperative winning set");

    GoalStack stack;
    stack.player = player;
    stack.goal = goal;

    auto side = single_player(player);
    auto target = goal;
    auto remaining = uncovered;
    auto limit = static_cast<std::size_t>(g.node_count(g.sigma)) + 1;
    bool stalled = false;
    for (;;) {
        StackGame game;
        auto covered = target;
        // The first round always runs; later rounds run while traps are found.
        for (;;) {
            auto step = unconditional_assumption(g, side, covered, c);
            covered = step.attr | step.trap;
            bool found = !step.trap.is_false();
            game.steps.push_back(std::move(step));
            if (!found) break;
        }
        game.entry.player = lowest_player(side);
        game.entry.side = side;
        game.entry.region = covered & !target;
        game.entry.target = target;
        for (const auto& step : game.steps)
            if (!step.trap.is_false()) game.entry.assumptions.push_back(step.assumption);
        stack.games.push_back(std::move(game));

        remaining &= !covered;
        if (remaining.is_false()) break;
        bool progress = covered != target;
        if (!progress && stalled)
            throw std::logic_error("internal error: nested games stopped covering the cooperative winning set");
        stalled = !progress;
        if (stack.games.size() > limit) throw std::logic_error("internal error: nesting deeper than the node count");
        side = opponents(g, side);
        target = covered;
    }
    stack.cpre_calls = c->cpre - cpre_before;
    return stack;
}

SynthesisReport synthesize(const GameStructure& g, Schedule schedule)
{
    SynthesisReport report;
    auto goals = all_goals(g);
    report.coop = compute_coop(g, goals, schedule);
    report.contract.rho_c = report.coop.rho_c;
    auto objectives = build_objectives(g);
    if ((report.coop.coop & g.sigma).is_false()) {
        report.satisfiable = false;
        report.contracts = std::move(objectives);
        report.diagnostics.push_back("goals cooperatively unsatisfiable");
        return report;
    }

    auto [restricted, contracts] = restrict_and_augment(g, report.coop, std::move(objectives));
    const auto& coop = restricted.sigma;
    for (std::size_t j = 0; j < g.players(); ++j) {
        for (std::size_t k = 0; k < goals[j].size(); ++k) {
            auto stack = game_stack(restricted, static_cast<int>(j), goals[j][k] & coop, coop);
            stack.goal_index = static_cast<int>(k);
            std::size_t assumptions = 0;
            for (const auto& game : stack.games) {
                assumptions += game.entry.assumptions.size();
                if (game.entry.assumptions.empty() && &game != &stack.games.front())
                    report.diagnostics.push_back("player " + std::to_string(j) + " goal " + std::to_string(k) +
                                                 ": nested game without a trap");
                for (std::size_t p = 0; p < g.players(); ++p)
                    if (contains_player(game.entry.side, static_cast<int>(p)))
                        for (const auto& a : game.entry.assumptions) contracts[p].env_recurrences.push_back(a);
            }
            report.diagnostics.push_back("player " + std::to_string(j) + " goal " + std::to_string(k) + ": depth " +
                                         std::to_string(stack.depth()) + ", " + std::to_string(assumptions) +
                                         " assumption(s)");
            report.cpre_calls += stack.cpre_calls;
            report.max_depth = std::max(report.max_depth, stack.depth());
            report.contract.stacks.push_back(std::move(stack));
        }
    }
    report.contracts = std::move(contracts);
    report.restricted = std::move(restricted);
    return report;
}

}  // namespace nestedgr1
