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

#include "nestedgr1/cli.hpp"

#include "nestedgr1/contract.hpp"
#include "nestedgr1/oracle.hpp"
#include "nestedgr1/strategy.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nestedgr1 {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Diagnostic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

GameSpec load(const RunConfig& config)
{
    std::ifstream in(config.input, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + config.input + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_game_spec(buffer.str());
}

struct Loaded {
    GameStructure game;
    Expansion ex;
};

Loaded load_game(const RunConfig& config)
{
    auto g = build_game(load(config), config.node_limit);
    auto ex = expand_explicit(g, config.expansion_limit);
    return {std::move(g), std::move(ex)};
}

// Names in natural order, so s2 sorts before s10.
std::vector<std::string> sorted_names(const ExplicitGame& g, const NodeSet& s)
{
    std::vector<std::string> out;
    for (int u : s) out.push_back(g.names[static_cast<std::size_t>(u)]);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
    });
    return out;
}

std::string join(const ExplicitGame& g, const NodeSet& s)
{
    std::string out;
    for (const auto& name : sorted_names(g, s)) {
        if (!out.empty()) out += ' ';
        out += name;
    }
    return out.empty() ? "(none)" : out;
}

Json names(const ExplicitGame& g, const NodeSet& s)
{
    return sorted_names(g, s);
}

NodeSet lookup(const ExplicitGame& g, const std::vector<std::string>& list)
{
    NodeSet out;
    for (const auto& name : list) {
        int u = g.index_of(name);
        if (u < 0) throw UsageError("unknown node '" + name + "'");
        out.insert(u);
    }
    return out;
}

std::vector<int> goal_indices(const RunConfig& config, std::size_t available)
{
    if (!config.goals.empty()) {
        for (int k : config.goals)
            if (k < 0 || static_cast<std::size_t>(k) >= available)
                throw UsageError("goal index " + std::to_string(k) + " out of range");
        return config.goals;
    }
    std::vector<int> all;
    for (std::size_t k = 0; k < available; ++k) all.push_back(static_cast<int>(k));
    return all;
}

ExitCode run_coop(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    auto schedule = parse_schedule(config.schedule);
    auto result = compute_coop(g, all_goals(g), schedule);
    auto coop = ex.set_of(g, result.coop);
    out << "schedule: " << to_string(schedule) << "\n";
    out << "coop: " << coop.size() << " of " << ex.game.size() << " nodes: " << join(ex.game, coop) << "\n";
    if (config.trace)
        for (std::size_t k = 0; k < result.iterations.size(); ++k)
            out << "iterate " << k << ": " << static_cast<long long>(g.node_count(result.iterations[k])) << "\n";
    out << "removed edges:";
    for (auto [u, v] : ex.game.edges)
        if (!coop.count(u) || !coop.count(v))
            out << ' ' << ex.game.names[static_cast<std::size_t>(u)] << "->" << ex.game.names[static_cast<std::size_t>(v)];
    out << "\n";
    if (coop.empty()) throw Diagnostic("goals cooperatively unsatisfiable");
    return ExitCode::ok;
}

Json contract_json(const SynthesisReport& report, const GameStructure& g, const Expansion& ex)
{
    auto set = [&](const Predicate& p) { return names(ex.game, ex.set_of(g, p)); };
    Json j;
    j["coop"] = set(report.coop.coop);
    j["contracts"] = Json::array();
    for (const auto& c : report.contracts) {
        Json o;
        o["player"] = c.player;
        o["env_safety_nodes"] = static_cast<long long>(g.node_count(report.coop.coop));
        o["assumptions"] = Json::array();
        for (const auto& a : c.env_recurrences) o["assumptions"].push_back(set(a));
        o["guarantees"] = Json::array();
        for (const auto& r : c.sys_recurrences) o["guarantees"].push_back(set(r & report.coop.coop));
        j["contracts"].push_back(o);
    }
    j["stacks"] = Json::array();
    for (const auto& stack : report.contract.stacks) {
        Json s;
        s["player"] = stack.player;
        s["goal"] = stack.goal_index;
        s["goal_nodes"] = set(stack.goal);
        s["games"] = Json::array();
        for (std::size_t d = 0; d < stack.games.size(); ++d) {
            const auto& game = stack.games[d];
            Json e;
            e["depth"] = d;
            e["player"] = game.entry.player;
            auto side = Json::array();
            for (std::size_t p = 0; p < g.players(); ++p)
                if (contains_player(game.entry.side, static_cast<int>(p))) side.push_back(p);
            e["side"] = side;
            e["region"] = set(game.entry.region);
            e["target"] = set(game.entry.target);
            e["assumptions"] = Json::array();
            for (const auto& a : game.entry.assumptions) e["assumptions"].push_back(set(a));
            e["steps"] = Json::array();
            for (const auto& step : game.steps) {
                Json st;
                st["attr"] = set(step.attr);
                st["escape"] = set(step.escape);
                st["trap"] = set(step.trap);
                e["steps"].push_back(st);
            }
            s["games"].push_back(e);
        }
        j["stacks"].push_back(s);
    }
    auto n = static_cast<long long>(g.node_count(g.sigma));
    j["stats"] = {{"cpre_calls", report.cpre_calls}, {"depth", report.max_depth}, {"nodes", n}, {"bound", 6 * n * n}};
    j["diagnostics"] = report.diagnostics;
    return j;
}

ExitCode run_contract(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    auto report = synthesize(g, parse_schedule(config.schedule));
    if (!report.satisfiable) throw Diagnostic("goals cooperatively unsatisfiable");
    auto j = contract_json(report, g, ex);
    if (config.stats) {
        out << "cpre_calls: " << report.cpre_calls << "\n";
        out << "depth: " << report.max_depth << "\n";
        out << "bound: " << j["stats"]["bound"].get<long long>() << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return ExitCode::ok;
}

ExitCode run_oracle(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    OracleGame og(ex.game);
    const auto& eg = og.game();
    if (config.check == "nonexistence-recurrence") {
        int j = config.player.value_or(0);
        if (j < 0 || static_cast<std::size_t>(j) >= eg.players) throw UsageError("unknown player");
        std::vector<NodeSet> goals;
        for (int k : goal_indices(config, eg.goals[static_cast<std::size_t>(j)].size()))
            goals.push_back(eg.goals[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
        auto found = search_node_assumptions(og, goals, j);
        for (const auto& p : found) out << "{" << (p.empty() ? "" : join(eg, p)) << "}\n";
        out << found.size() << " subsets found\n";
        return ExitCode::ok;
    }
    if (config.check == "nonexistence-safety") {
        int j = config.player.value_or(1);
        auto found = search_safety_restrictions(og, j);
        for (const auto& edges : found) {
            out << "{";
            bool first = true;
            for (auto [u, v] : edges) {
                out << (first ? "" : " ") << eg.names[static_cast<std::size_t>(u)] << "->"
                    << eg.names[static_cast<std::size_t>(v)];
                first = false;
            }
            out << "}\n";
        }
        out << found.size() << " subsets found\n";
        return ExitCode::ok;
    }
    if (config.check == "mutual") {
        int j = config.player.value_or(0);
        if (j < 0 || static_cast<std::size_t>(j) >= eg.players) throw UsageError("unknown player");
        std::vector<NodeSet> goals;
        for (int k : goal_indices(config, eg.goals[static_cast<std::size_t>(j)].size()))
            goals.push_back(eg.goals[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
        auto p = lookup(eg, config.assumption);
        std::vector<std::vector<NodeSet>> own(eg.players);
        own[static_cast<std::size_t>(j)] = goals;
        auto from = coop_explicit(og, own);
        RealizabilityQuery provide;
        provide.system = all_players(eg.players) & ~single_player(j);
        provide.guarantees = {p};
        provide.from_nodes = from;
        RealizabilityQuery use;
        use.system = single_player(j);
        use.assumptions = {p};
        use.guarantees = goals;
        use.from_nodes = from;
        auto provide_win = gr1_realizable(og, provide);
        auto use_win = gr1_realizable(og, use);
        bool a = holds(og, provide), b = holds(og, use);
        out << "assumption: {" << join(eg, p) << "}\n";
        out << "required from: " << join(eg, from) << "\n";
        out << "provider wins from: " << join(eg, provide_win) << "\n";
        out << "guarantor wins from: " << join(eg, use_win) << "\n";
        out << "mutually realizable: " << (a && b ? "yes" : "no") << "\n";
        return ExitCode::ok;
    }
    if (config.check == "coop") {
        auto explicit_coop = coop_explicit(og);
        auto symbolic = ex.set_of(g, compute_coop(g, all_goals(g), parse_schedule(config.schedule)).coop);
        out << "coop: " << join(eg, explicit_coop) << "\n";
        out << "symbolic agrees: " << (explicit_coop == symbolic ? "yes" : "no") << "\n";
        return explicit_coop == symbolic ? ExitCode::ok : ExitCode::diagnostic;
    }
    throw UsageError("unknown check '" + config.check + "'");
}

ExitCode run_ops(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    const auto& eg = ex.game;
    auto line = [&](const std::string& label, const Predicate& p) {
        auto s = ex.set_of(g, p);
        out << label << ": " << s.size() << " nodes: " << join(eg, s) << "\n";
    };
    if (config.op.empty()) {
        for (std::size_t j = 0; j < g.players(); ++j) {
            auto goals = effective_goals(g, static_cast<int>(j));
            for (std::size_t k = 0; k < goals.size(); ++k) {
                auto tag = "goal " + std::to_string(j) + " " + std::to_string(k);
                line(tag, goals[k]);
                line(tag + " pre", pre(g, goals[k]));
                line(tag + " pre_star", pre_star(g, goals[k]));
                line(tag + " cpre_" + std::to_string(j), cpre(g, static_cast<int>(j), goals[k]));
                line(tag + " attr_" + std::to_string(j), attr(g, static_cast<int>(j), goals[k]));
            }
        }
        out << "node store: " << g.store->node_count() << " diagram nodes\n";
        return ExitCode::ok;
    }
    auto f = ex.predicate_of(g, lookup(eg, config.nodes));
    auto side = single_player(config.player.value_or(0));
    if (config.op == "pre") {
        line("pre", config.player ? pre(g, *config.player, f) : pre(g, f));
    } else if (config.op == "pre_star") {
        line("pre_star", pre_star(g, f));
    } else if (config.op == "cpre") {
        line("cpre", cpre(g, side, f));
    } else if (config.op == "attr") {
        line("attr", attr(g, side, f));
    } else if (config.op == "trap") {
        line("trap", trap(g, side, f, ex.predicate_of(g, lookup(eg, config.exit_nodes))));
    } else {
        throw UsageError("unknown operator '" + config.op + "'");
    }
    return ExitCode::ok;
}

ExitCode run_simulate(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    auto report = synthesize(g, parse_schedule(config.schedule));
    if (!report.satisfiable) throw Diagnostic("goals cooperatively unsatisfiable");
    auto strategy = extract_strategy(report, ex);
    SimulationConfig sc;
    sc.steps = config.steps;
    sc.seed = config.seed;
    sc.policy = parse_policy(config.policy);
    if (config.start.empty()) {
        sc.start = *strategy.coop.begin();
    } else {
        sc.start = ex.game.index_of(config.start);
        if (sc.start < 0) throw UsageError("unknown node '" + config.start + "'");
        if (!strategy.coop.count(sc.start)) throw Diagnostic("start node outside the cooperative winning set");
    }
    auto trace = simulate(strategy, sc);
    const auto& names = ex.game.names;
    if (config.format == "dot") {
        EdgeSet cycle;
        if (trace.lasso_start) {
            for (std::size_t t = *trace.lasso_start; t + 1 < trace.steps.size(); ++t)
                cycle.insert({trace.steps[t].node, trace.steps[t + 1].node});
            cycle.insert({trace.steps.back().node, trace.steps[*trace.lasso_start].node});
        }
        out << to_dot(strategy.game.game(), cycle);
        return ExitCode::ok;
    }
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const auto& s = trace.steps[t];
        out << "step " << t << ": " << names[static_cast<std::size_t>(s.node)] << " leader " << s.leader << " goal "
            << s.goal_index << (s.achieved ? " achieved" : "") << "\n";
    }
    if (trace.lasso_start) {
        out << "lasso from step " << *trace.lasso_start << ", length " << trace.steps.size() - *trace.lasso_start
            << "\n";
        out << "goals visited in cycle:";
        for (auto [j, k] : trace.visited_in_cycle) out << ' ' << j << '/' << k;
        out << "\n";
    }
    return ExitCode::ok;
}

ExitCode run_dot(const RunConfig& config, std::ostream& out)
{
    auto [g, ex] = load_game(config);
    out << to_dot(ex.game);
    return ExitCode::ok;
}

std::size_t env_size(const char* name, std::size_t fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    auto n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0) throw UsageError(std::string(name) + " must be a positive integer");
    return static_cast<std::size_t>(n);
}

}  // namespace

void apply_environment(RunConfig& config)
{
    config.node_limit = env_size("NESTEDGR1_NODE_LIMIT", config.node_limit);
    config.expansion_limit = env_size("NESTEDGR1_EXPANSION_LIMIT", config.expansion_limit);
}

ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.node_limit == 0 || config.expansion_limit == 0) throw UsageError("ceilings must be positive");
        if (config.subcommand == "coop") return run_coop(config, out);
        if (config.subcommand == "contract") return run_contract(config, out);
        if (config.subcommand == "oracle") return run_oracle(config, out);
        if (config.subcommand == "ops") return run_ops(config, out);
        if (config.subcommand == "simulate") return run_simulate(config, out);
        if (config.subcommand == "dot") return run_dot(config, out);
        throw UsageError("unknown subcommand '" + config.subcommand + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const ParseError& e) {
        err << config.input << ":" << e.what() << "\n";
        return ExitCode::usage;
    } catch (const SpecError& e) {
        err << config.input << ": " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::usage;
    } catch (const Diagnostic& e) {
        err << "diagnostic: " << e.what() << "\n";
        return ExitCode::diagnostic;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return ExitCode::diagnostic;
    }
}

}  // namespace nestedgr1
