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

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using nestedgr1::RunConfig;
    RunConfig config;

    CLI::App app{"Cooperative winning sets and nested GR(1) contracts"};
    app.require_subcommand(1);
    app.add_option("--node-limit", config.node_limit, "Decision diagram node ceiling")->check(CLI::PositiveNumber);
    app.add_option("--expansion-limit", config.expansion_limit, "Ceiling on enumerated game nodes")
        ->check(CLI::PositiveNumber);

    auto input = [&](CLI::App* sub) {
        sub->add_option("input", config.input, "Game file (.sg or .xg)")->required();
    };
    auto schedule = [&](CLI::App* sub) {
        sub->add_option("--schedule", config.schedule, "Closure schedule")
            ->check(CLI::IsMember({"flat", "grouped", "iterated"}));
    };

    auto* coop = app.add_subcommand("coop", "Cooperative winning set");
    input(coop);
    schedule(coop);
    coop->add_flag("--trace", config.trace, "Print iterate node counts");

    auto* contract = app.add_subcommand("contract", "Nested game contract as JSON");
    input(contract);
    schedule(contract);
    contract->add_flag("--stats", config.stats, "Print CPre call count and nesting depth only");

    auto* oracle = app.add_subcommand("oracle", "Explicit-state checks");
    input(oracle);
    schedule(oracle);
    oracle->add_option("--check", config.check, "Check to run")
        ->required()
        ->check(CLI::IsMember({"nonexistence-recurrence", "nonexistence-safety", "mutual", "coop"}));
    oracle->add_option("--player", config.player, "Player whose goals or edges are examined");
    oracle->add_option("--goals", config.goals, "Goal indices (default all)")->delimiter(',');
    oracle->add_option("--assume", config.assumption, "Assumption node set for --check mutual")->delimiter(',');

    auto* ops = app.add_subcommand("ops", "Apply one operator, or summarize all on the goals");
    input(ops);
    ops->add_option("--op", config.op, "pre, pre_star, cpre, attr or trap");
    ops->add_option("--player", config.player, "Player or coalition member");
    ops->add_option("--nodes", config.nodes, "Operand node set")->delimiter(',');
    ops->add_option("--exit", config.exit_nodes, "Exit set for trap")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "Play the extracted strategies");
    input(simulate);
    schedule(simulate);
    simulate->add_option("--steps", config.steps, "Step bound");
    simulate->add_option("--policy", config.policy, "Free-move policy")
        ->check(CLI::IsMember({"cooperative", "adversarial", "random"}));
    simulate->add_option("--seed", config.seed, "Random seed");
    simulate->add_option("--start", config.start, "Start node (default: first cooperative node)");
    simulate->add_option("--format", config.format, "text or dot")->check(CLI::IsMember({"text", "dot"}));

    auto* dot = app.add_subcommand("dot", "Graphviz drawing of the game");
    input(dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : static_cast<int>(nestedgr1::ExitCode::usage);
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    try {
        nestedgr1::apply_environment(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(nestedgr1::ExitCode::usage);
    }
    return static_cast<int>(nestedgr1::run(config, std::cout, std::cerr));
}
