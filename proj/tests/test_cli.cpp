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
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace nestedgr1;

namespace {

struct Outcome {
    ExitCode code;
    std::string out;
    std::string err;
};

Outcome run_with(RunConfig config)
{
    std::ostringstream out, err;
    auto code = run(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config_for(const std::string& subcommand, const std::string& fixture)
{
    RunConfig c;
    c.subcommand = subcommand;
    c.input = testing::fixture_path(fixture);
    return c;
}

struct Golden {
    const char* expected;
    RunConfig config;
};

std::vector<Golden> goldens()
{
    std::vector<Golden> out;
    out.push_back({"weak_fairness.contract.json", config_for("contract", "weak_fairness.xg")});
    auto coop = config_for("coop", "weak_fairness.xg");
    coop.trace = true;
    out.push_back({"weak_fairness.coop.txt", coop});
    out.push_back({"lack_of_closure.coop.txt", config_for("coop", "lack_of_closure.xg")});
    out.push_back({"lack_of_closure.contract.json", config_for("contract", "lack_of_closure.xg")});
    auto safety = config_for("oracle", "safety.xg");
    safety.check = "nonexistence-safety";
    out.push_back({"safety.nonexistence-safety.txt", safety});
    auto recurrence = config_for("oracle", "safety.xg");
    recurrence.check = "nonexistence-recurrence";
    out.push_back({"safety.nonexistence-recurrence.txt", recurrence});
    auto sim = config_for("simulate", "safety.xg");
    sim.steps = 50;
    out.push_back({"safety.simulate.txt", sim});
    auto symbolic = config_for("simulate", "handshake.sg");
    symbolic.steps = 20;
    out.push_back({"handshake.simulate.txt", symbolic});
    auto dot = config_for("simulate", "weak_fairness.xg");
    dot.format = "dot";
    out.push_back({"weak_fairness.simulate.dot", dot});
    return out;
}

}  // namespace

TEST_CASE("golden outputs")
{
    for (const auto& g : goldens()) {
        auto result = run_with(g.config);
        CHECK_MESSAGE(result.code == ExitCode::ok, g.expected);
        auto expected = testing::read_file(testing::fixture_path(std::string("expected/") + g.expected));
        CHECK_MESSAGE(result.out == expected, g.expected);
    }
}

TEST_CASE("contract JSON schema")
{
    auto result = run_with(config_for("contract", "weak_fairness.xg"));
    REQUIRE(result.code == ExitCode::ok);
    auto j = nlohmann::json::parse(result.out);
    CHECK(j.contains("contracts"));
    CHECK(j.contains("stacks"));
    CHECK(j["stats"].contains("cpre_calls"));
    CHECK(j["stats"].contains("depth"));
    CHECK(j["contracts"][0]["env_safety_nodes"] == 7);
    CHECK(j["stacks"][0]["games"][1]["assumptions"][0] == nlohmann::json({"s4", "s5", "s6"}));
}

TEST_CASE("outputs are deterministic")
{
    for (const auto& g : goldens()) CHECK(run_with(g.config).out == run_with(g.config).out);
    auto random = config_for("simulate", "safety.xg");
    random.policy = "random";
    random.seed = 5;
    CHECK(run_with(random).out == run_with(random).out);
}

TEST_CASE("exit codes")
{
    auto missing = config_for("coop", "no_such_file.xg");
    auto r = run_with(missing);
    CHECK(r.code == ExitCode::usage);
    CHECK(r.err.find("cannot open") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    auto unknown = config_for("frobnicate", "safety.xg");
    CHECK(run_with(unknown).code == ExitCode::usage);

    auto bad_schedule = config_for("coop", "safety.xg");
    bad_schedule.schedule = "fast";
    CHECK(run_with(bad_schedule).code == ExitCode::usage);

    auto limit = config_for("coop", "safety.xg");
    limit.node_limit = 0;
    CHECK(run_with(limit).code == ExitCode::usage);

    auto tiny = config_for("coop", "safety.xg");
    tiny.expansion_limit = 3;
    CHECK(run_with(tiny).code == ExitCode::diagnostic);
}

TEST_CASE("parse errors exit with usage status")
{
    auto path = std::string(NESTEDGR1_BINARY_DIR) + "/broken.sg";
    {
        std::ofstream out(path);
        out << "players 2\nowns 0: x\nowns 1: y\naction 0: x' &\naction 1: true\n";
    }
    RunConfig c;
    c.subcommand = "coop";
    c.input = path;
    auto r = run_with(c);
    CHECK(r.code == ExitCode::usage);
    CHECK(r.err.find(":4:") != std::string::npos);
}

TEST_CASE("unsatisfiable goals exit with diagnostic status")
{
    auto path = std::string(NESTEDGR1_BINARY_DIR) + "/dead_end.xg";
    {
        std::ofstream out(path);
        out << "players 2\nplayer 0 nodes: a\nplayer 1 nodes: b c\nedge a b\nedge b a\nedge a c\ngoal 0 0: c\n";
    }
    for (const char* sub : {"coop", "contract", "simulate"}) {
        RunConfig c;
        c.subcommand = sub;
        c.input = path;
        auto r = run_with(c);
        CHECK(r.code == ExitCode::diagnostic);
        CHECK(r.err.find("unsatisfiable") != std::string::npos);
    }
}

TEST_CASE("oracle checks through the command line")
{
    auto c = config_for("oracle", "safety.xg");
    c.check = "coop";
    auto r = run_with(c);
    CHECK(r.code == ExitCode::ok);
    CHECK(r.out.find("symbolic agrees: yes") != std::string::npos);

    auto m = config_for("oracle", "safety.xg");
    m.check = "mutual";
    m.goals = {1};
    m.assumption = {"s0", "s2"};
    r = run_with(m);
    CHECK(r.out.find("mutually realizable: yes") != std::string::npos);
    m.assumption = {"s3"};
    r = run_with(m);
    CHECK(r.out.find("mutually realizable: no") != std::string::npos);

    m.assumption = {"s99"};
    CHECK(run_with(m).code == ExitCode::usage);
}

TEST_CASE("ops subcommand")
{
    auto c = config_for("ops", "weak_fairness.xg");
    c.op = "attr";
    c.player = 1;
    c.nodes = {"s5", "s6"};
    auto r = run_with(c);
    CHECK(r.out == "attr: 3 nodes: s4 s5 s6\n");
    c.op = "trap";
    c.player = 0;
    c.nodes = {"s4", "s5", "s6"};
    c.exit_nodes = {"s5", "s6"};
    CHECK(run_with(c).out == "trap: 2 nodes: s5 s6\n");
    c.op = "sideways";
    CHECK(run_with(c).code == ExitCode::usage);
    auto summary = config_for("ops", "safety.xg");
    CHECK(run_with(summary).out.find("goal 0 1 pre_star") != std::string::npos);
}

TEST_CASE("environment overrides the ceilings")
{
    RunConfig c;
    setenv("NESTEDGR1_EXPANSION_LIMIT", "5", 1);
    apply_environment(c);
    CHECK(c.expansion_limit == 5);
    setenv("NESTEDGR1_EXPANSION_LIMIT", "zero", 1);
    CHECK_THROWS(apply_environment(c));
    unsetenv("NESTEDGR1_EXPANSION_LIMIT");
}
