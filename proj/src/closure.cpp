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

#include <functional>
#include <string>

namespace nestedgr1 {

std::string_view to_string(Schedule s)
{
    switch (s) {
    case Schedule::flat: return "flat";
    case Schedule::grouped: return "grouped";
    case Schedule::iterated: return "iterated";
    }
    return "?";
}

Schedule parse_schedule(std::string_view name)
{
    if (name == "flat") return Schedule::flat;
    if (name == "grouped") return Schedule::grouped;
    if (name == "iterated") return Schedule::iterated;
    throw std::invalid_argument("unknown schedule '" + std::string(name) + "'");
}

GoalTable all_goals(const GameStructure& g)
{
    GoalTable out;
    for (std::size_t j = 0; j < g.players(); ++j) out.push_back(effective_goals(g, static_cast<int>(j)));
    return out;
}

namespace {

// Decreasing iteration from `start`, recording every distinct iterate.
Predicate descend(const Predicate& start, const std::function<Predicate(const Predicate&)>& body,
                  std::vector<Predicate>* trace)
{
    auto current = start;
    if (trace) trace->push_back(current);
    for (std::size_t k = 0; k < FixpointEnvironment::default_iteration_limit; ++k) {
        auto next = body(current);
        if (next == current) return current;
        current = next;
        if (trace) trace->push_back(current);
    }
    throw ResourceError("closure iteration did not converge");
}

CoopResult finish(const GameStructure& g, Predicate coop, Schedule s, std::vector<Predicate> trace)
{
    CoopResult r;
    r.coop = coop;
    r.rho_c = coop & g.prime(coop);
    r.schedule = s;
    r.iterations = std::move(trace);
    return r;
}

Predicate recurrence_step(const GameStructure& g, const Predicate& z, const std::vector<Predicate>& goals,
                          OpCounters* counters)
{
    auto step = pre(g, z, counters);
    auto acc = g.sigma;
    for (const auto& goal : goals) acc &= pre_star(g, goal & step, counters);
    return acc;
}

}  // namespace

CoopResult coop_flat(const GameStructure& g, const GoalTable& goals, OpCounters* counters)
{
    std::vector<Predicate> trace;
    auto coop = descend(
        g.sigma,
        [&](const Predicate& z) {
            auto step = pre(g, z, counters);
            auto acc = g.sigma;
            for (const auto& per : goals)
                for (const auto& goal : per) acc &= pre_star(g, goal & step, counters);
            return acc;
        },
        &trace);
    return finish(g, coop, Schedule::flat, std::move(trace));
}

Predicate player_closure(const GameStructure& g, const Predicate& q, const std::vector<Predicate>& goals,
                         OpCounters* counters)
{
    auto bound = q & g.sigma;
    return descend(
        bound, [&](const Predicate& z) { return bound & recurrence_step(g, z, goals, counters); }, nullptr);
}

CoopResult coop_grouped(const GameStructure& g, const GoalTable& goals, OpCounters* counters)
{
    std::vector<Predicate> trace;
    auto coop = descend(
        g.sigma,
        [&](const Predicate& z) {
            auto acc = g.sigma;
            for (const auto& per : goals) acc &= player_closure(g, z, per, counters);
            return acc;
        },
        &trace);
    return finish(g, coop, Schedule::grouped, std::move(trace));
}

CoopResult coop_iterated(const GameStructure& g, const GoalTable& goals, OpCounters* counters)
{
    // Same recursion as the grouped form, with each round reported as Q^k.
    std::vector<Predicate> trace;
    auto coop = descend(
        g.sigma,
        [&](const Predicate& q) {
            auto next = g.sigma;
            for (const auto& per : goals) next &= player_closure(g, q, per, counters);
            return next;
        },
        &trace);
    return finish(g, coop, Schedule::iterated, std::move(trace));
}

CoopResult compute_coop(const GameStructure& g, const GoalTable& goals, Schedule s, OpCounters* counters)
{
    switch (s) {
    case Schedule::flat: return coop_flat(g, goals, counters);
    case Schedule::grouped: return coop_grouped(g, goals, counters);
    case Schedule::iterated: return coop_iterated(g, goals, counters);
    }
    throw std::invalid_argument("unknown schedule");
}

std::pair<GameStructure, std::vector<Gr1Objective>> restrict_and_augment(const GameStructure& g,
                                                                        const CoopResult& coop,
                                                                        std::vector<Gr1Objective> objectives)
{
    if ((coop.coop & g.sigma).is_false()) throw UnsatisfiableGoals();
    auto restricted = restrict_game(g, coop.coop);
    for (auto& o : objectives) {
        o.env_safety &= coop.rho_c;
        o.sys_safety &= coop.rho_c;
    }
    return {std::move(restricted), std::move(objectives)};
}

}  // namespace nestedgr1
