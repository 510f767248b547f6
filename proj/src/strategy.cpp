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

#include "nestedgr1/strategy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace nestedgr1 {

int Strategy::stack_index(int player, int goal_index) const
{
    for (std::size_t k = 0; k < stacks.size(); ++k)
        if (stacks[k].player == player && stacks[k].goal_index == goal_index) return static_cast<int>(k);
    return -1;
}

std::size_t Strategy::goal_count(int player) const
{
    return static_cast<std::size_t>(
        std::count_if(stacks.begin(), stacks.end(), [&](const StackStrategy& s) { return s.player == player; }));
}

namespace {

OracleGame restricted_oracle(const Expansion& ex, const NodeSet& coop)
{
    auto g = ex.game;
    EdgeSet kept;
    for (auto e : g.edges)
        if (coop.count(e.first) && coop.count(e.second)) kept.insert(e);
    g.edges = std::move(kept);
    return OracleGame(std::move(g));
}

int first_ring(const std::vector<NodeSet>& rings, int u)
{
    for (std::size_t i = 0; i < rings.size(); ++i)
        if (rings[i].count(u)) return static_cast<int>(i);
    return -1;
}

}  // namespace

Strategy extract_strategy(const SynthesisReport& report, const Expansion& ex)
{
    if (!report.restricted) throw std::logic_error("synthesis produced no stacks");
    const auto& g = *report.restricted;
    auto coop = ex.set_of(g, g.sigma);
    Strategy out{restricted_oracle(ex, coop), coop, {}};
    const auto& og = out.game;
    auto n = og.size();

    for (const auto& stack : report.contract.stacks) {
        StackStrategy ss;
        ss.player = stack.player;
        ss.goal_index = stack.goal_index;
        ss.goal = ex.set_of(g, stack.goal);
        ss.depth = stack.depth();
        ss.game_of.assign(n, -2);
        ss.side_of.assign(n, 0);
        ss.rank.assign(n, goal_rank);
        ss.move.assign(n, -1);
        ss.permitted.assign(n, {});
        for (int u : ss.goal) ss.game_of[static_cast<std::size_t>(u)] = -1;

        for (std::size_t d = 0; d < stack.games.size(); ++d) {
            const auto& game = stack.games[d];
            auto region = ex.set_of(g, game.entry.region);
            NodeSet pending = region;
            for (std::size_t s = 0; s < game.steps.size() && !pending.empty(); ++s) {
                const auto& step = game.steps[s];
                std::vector<NodeSet> attr_rings, escape_rings;
                for (const auto& p : step.attr_rings) attr_rings.push_back(ex.set_of(g, p));
                for (const auto& p : step.escape_rings) escape_rings.push_back(ex.set_of(g, p));
                auto trap = ex.set_of(g, step.trap);
                for (auto it = pending.begin(); it != pending.end();) {
                    int u = *it;
                    Rank r{};
                    if (int i = first_ring(attr_rings, u); i >= 0) {
                        r = {static_cast<int>(d), static_cast<int>(s), 0, i};
                    } else if (trap.count(u)) {
                        r = {static_cast<int>(d), static_cast<int>(s), 1, first_ring(escape_rings, u)};
                    } else {
                        ++it;
                        continue;
                    }
                    auto us = static_cast<std::size_t>(u);
                    ss.rank[us] = r;
                    ss.game_of[us] = static_cast<int>(d);
                    ss.side_of[us] = game.entry.side;
                    it = pending.erase(it);
                }
            }
            if (!pending.empty()) throw std::logic_error("missing iterates for a region node");
        }

        for (int u : coop) {
            auto us = static_cast<std::size_t>(u);
            if (ss.game_of[us] == -2) throw std::logic_error("cooperative node outside every stack region");
            const auto& succ = og.successors(u);
            if (ss.game_of[us] == -1) {
                ss.permitted[us] = succ;
                continue;
            }
            std::vector<int> lower;
            for (int v : succ)
                if (ss.rank[static_cast<std::size_t>(v)] < ss.rank[us]) lower.push_back(v);
            if (lower.empty()) throw std::logic_error("no rank-decreasing move at " + og.game().names[us]);
            if (contains_player(ss.side_of[us], og.owner(u))) {
                ss.move[us] = *std::min_element(lower.begin(), lower.end(), [&](int a, int b) {
                    return std::tie(ss.rank[static_cast<std::size_t>(a)], a) <
                           std::tie(ss.rank[static_cast<std::size_t>(b)], b);
                });
            } else {
                ss.permitted[us] = std::move(lower);
            }
        }
        out.stacks.push_back(std::move(ss));
    }
    return out;
}

std::string_view to_string(Policy p)
{
    switch (p) {
    case Policy::cooperative: return "cooperative";
    case Policy::adversarial: return "adversarial";
    case Policy::random: return "random";
    case Policy::scripted: return "scripted";
    }
    return "?";
}

Policy parse_policy(std::string_view name)
{
    if (name == "cooperative") return Policy::cooperative;
    if (name == "adversarial") return Policy::adversarial;
    if (name == "random") return Policy::random;
    if (name == "scripted") return Policy::scripted;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

PlayTrace simulate(const Strategy& s, const SimulationConfig& config)
{
    PlayTrace trace;
    if (!s.coop.count(config.start)) throw std::invalid_argument("start node outside the cooperative winning set");
    const auto& og = s.game;
    auto players = og.game().players;
    std::vector<int> counters(players, 0);
    int leader = 0;
    int node = config.start;
    std::size_t wait = 0;
    std::size_t script_pos = 0;
    std::mt19937_64 rng(config.seed);
    std::map<std::tuple<int, int, std::vector<int>>, std::size_t> seen;

    auto current = [&]() -> const StackStrategy& {
        return s.stacks.at(static_cast<std::size_t>(s.stack_index(leader, counters[static_cast<std::size_t>(leader)])));
    };

    for (std::size_t t = 0; t < config.steps; ++t) {
        bool deterministic = config.policy == Policy::cooperative || config.policy == Policy::adversarial ||
                             (config.policy == Policy::scripted && script_pos >= config.script.size());
        if (deterministic) {
            auto key = std::make_tuple(node, leader, counters);
            auto [it, fresh] = seen.emplace(key, t);
            if (!fresh) {
                trace.lasso_start = it->second;
                break;
            }
        }

        PlayStep step{node, leader, counters[static_cast<std::size_t>(leader)], false};
        if (current().goal.count(node)) {
            step.achieved = true;
            trace.longest_wait = std::max(trace.longest_wait, wait);
            wait = 0;
            auto& c = counters[static_cast<std::size_t>(leader)];
            c = static_cast<int>((static_cast<std::size_t>(c) + 1) % s.goal_count(leader));
            leader = static_cast<int>((static_cast<std::size_t>(leader) + 1) % players);
        }
        trace.steps.push_back(step);

        const auto& st = current();
        auto us = static_cast<std::size_t>(node);
        int next = st.move[us];
        if (next < 0) {
            const auto& options = st.permitted[us];
            if (options.empty()) break;
            auto by_rank = [&](int a, int b) {
                return std::tie(st.rank[static_cast<std::size_t>(a)], a) <
                       std::tie(st.rank[static_cast<std::size_t>(b)], b);
            };
            switch (config.policy) {
            case Policy::cooperative: next = *std::min_element(options.begin(), options.end(), by_rank); break;
            case Policy::adversarial: next = *std::max_element(options.begin(), options.end(), by_rank); break;
            case Policy::random: {
                std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
                next = options[pick(rng)];
                break;
            }
            case Policy::scripted:
                if (script_pos < config.script.size()) {
                    next = config.script[script_pos++];
                    if (std::find(options.begin(), options.end(), next) == options.end())
                        throw std::invalid_argument("scripted move to " + og.game().names.at(static_cast<std::size_t>(next)) +
                                                    " is not permitted");
                } else {
                    next = *std::min_element(options.begin(), options.end(), by_rank);
                }
                break;
            }
        }
        node = next;
        ++wait;
    }

    if (trace.lasso_start) {
        for (std::size_t t = *trace.lasso_start; t < trace.steps.size(); ++t) {
            const auto& step = trace.steps[t];
            for (const auto& ss : s.stacks)
                if (ss.goal.count(step.node)) trace.visited_in_cycle.insert({ss.player, ss.goal_index});
            if (step.achieved) trace.achieved_in_cycle.insert({step.leader, step.goal_index});
        }
    }
    return trace;
}

ExhaustiveResult check_exhaustive(const Strategy& s)
{
    ExhaustiveResult result;
    const auto& og = s.game;
    auto n = og.size();
    for (const auto& st : s.stacks) {
        auto bound = s.coop.size() * std::max<std::size_t>(st.depth, 1);
        // Longest number of moves to the goal under every permitted choice.
        std::vector<long> longest(n, -1);
        std::vector<char> state(n, 0);  // 0 new, 1 on path, 2 done
        std::function<long(int)> visit = [&](int u) -> long {
            auto us = static_cast<std::size_t>(u);
            if (state[us] == 2) return longest[us];
            if (state[us] == 1) return -1;
            if (st.goal.count(u)) {
                state[us] = 2;
                return longest[us] = 0;
            }
            state[us] = 1;
            std::vector<int> next = st.move[us] >= 0 ? std::vector<int>{st.move[us]} : st.permitted[us];
            if (next.empty()) return -1;
            long worst = 0;
            for (int v : next) {
                auto f = visit(v);
                if (f < 0) return -1;
                worst = std::max(worst, f + 1);
            }
            state[us] = 2;
            return longest[us] = worst;
        };
        for (int u : s.coop) {
            auto f = visit(u);
            auto who = "player " + std::to_string(st.player) + " goal " + std::to_string(st.goal_index);
            if (f < 0) {
                result.ok = false;
                result.failure = who + ": the goal can be avoided forever from " + og.game().names[static_cast<std::size_t>(u)];
                return result;
            }
            if (static_cast<std::size_t>(f) > bound) {
                result.ok = false;
                result.failure = who + ": " + std::to_string(f) + " moves needed, above " + std::to_string(bound);
                return result;
            }
            result.worst_steps = std::max(result.worst_steps, static_cast<std::size_t>(f));
        }
    }
    return result;
}

std::string to_dot(const ExplicitGame& g, const EdgeSet& highlight)
{
    std::ostringstream out;
    out << "digraph game {\n";
    for (std::size_t u = 0; u < g.size(); ++u) {
        const char* shape = g.owner[u] == 0 ? "circle" : g.owner[u] == 1 ? "box" : "diamond";
        out << "  n" << u << " [label=\"" << g.names[u] << "\", shape=" << shape << "];\n";
    }
    for (auto [u, v] : g.edges) {
        out << "  n" << u << " -> n" << v;
        if (highlight.count({u, v})) out << " [penwidth=2, color=red]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace nestedgr1
