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


// Acceptance suite: one line per criterion, PASS or FAIL, with measurements.
// Usage: acceptance [criterion...]; no argument runs all nine.

#include "nestedgr1/cli.hpp"
#include "nestedgr1/strategy.hpp"
#include "support.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nestedgr1;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    std::ostringstream out;
    out.precision(3);
    out << std::fixed << s << " s";
    return out.str();
}

std::string show(const ExplicitGame& g, const NodeSet& s)
{
    std::vector<std::string> names;
    for (int u : s) names.push_back(g.names[static_cast<std::size_t>(u)]);
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
    return out + "}";
}

NodeSet named(const ExplicitGame& g, std::initializer_list<const char*> names)
{
    NodeSet s;
    for (const auto* n : names) s.insert(g.index_of(n));
    return s;
}

Verdict walkthrough()
{
    auto t0 = Clock::now();
    RunConfig config;
    config.subcommand = "contract";
    config.input = testing::fixture_path("weak_fairness.xg");
    std::ostringstream out, err;
    auto code = run(config, out, err);
    if (code != ExitCode::ok) return {false, "contract exited with " + err.str()};
    auto j = nlohmann::json::parse(out.str());
    using Names = std::vector<std::string>;
    auto names = [](const nlohmann::json& a) {
        auto v = a.get<Names>();
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto& stack = j["stacks"][0];
    const auto& top = stack["games"][0]["steps"][0];
    bool a = names(top["attr"]) == Names{"s5", "s6"};
    bool b = names(top["escape"]) == Names{"s4", "s5", "s6"};
    bool empty_trap = top["trap"].empty();
    bool depth2 = stack["games"].size() == 2;
    bool assumption = depth2 && stack["games"][1]["assumptions"].size() == 1;

    // The assumption must equal !(s0|s1|s2|s3) on the cooperative winning set.
    auto coop = names(j["coop"]);
    Names complement;
    for (const auto& n : coop)
        if (n != "s0" && n != "s1" && n != "s2" && n != "s3") complement.push_back(n);
    assumption = assumption && names(stack["games"][1]["assumptions"][0]) == complement;

    Names covered = names(stack["goal_nodes"]);
    for (const auto& game : stack["games"])
        for (const auto& n : game["region"]) covered.push_back(n.get<std::string>());
    std::sort(covered.begin(), covered.end());
    bool covers = covered == coop;
    double t = seconds_since(t0);
    std::ostringstream d;
    d << "A=" << top["attr"].dump() << " B=" << top["escape"].dump() << " trap0=" << top["trap"].dump()
      << " depth=" << stack["games"].size() << " nested assumption="
      << (depth2 ? stack["games"][1]["assumptions"].dump() : "none") << " covers coop=" << (covers ? "yes" : "no")
      << " time=" << fmt_seconds(t);
    return {a && b && empty_trap && depth2 && assumption && covers && t < 1.0, d.str()};
}

Verdict nonexistence_recurrence()
{
    auto t0 = Clock::now();
    OracleGame og(testing::load_fixture("safety.xg"));
    auto found = search_node_assumptions(og, og.game().goals[0], 0);
    double t = seconds_since(t0);
    std::ostringstream d;
    d << (1u << og.size()) << " subsets searched, " << found.size() << " mutually realizable, time=" << fmt_seconds(t);
    return {found.empty() && og.size() == 7 && t < 30.0, d.str()};
}

Verdict single_goal_assumptions()
{
    OracleGame og(testing::load_fixture("safety.xg"));
    const auto& g = og.game();
    auto g1 = g.goals[0][0];
    auto g2 = g.goals[0][1];
    auto for_g2 = search_node_assumptions(og, {g2}, 0);
    auto for_g1 = search_node_assumptions(og, {g1}, 0);
    auto has = [](const std::vector<NodeSet>& list, const NodeSet& s) {
        return std::find(list.begin(), list.end(), s) != list.end();
    };
    bool s3 = has(for_g2, named(g, {"s3"}));
    bool s0s2 = has(for_g1, named(g, {"s0", "s2"}));
    std::ostringstream d;
    d << "G_2=" << show(g, g2) << ": " << for_g2.size() << " sets, {s3} " << (s3 ? "found" : "missing") << "; G_1="
      << show(g, g1) << ": " << for_g1.size() << " sets, {s0,s2} " << (s0s2 ? "found" : "missing");
    if (!for_g2.empty()) {
        d << "; G_2 sets:";
        for (const auto& s : for_g2) d << ' ' << show(g, s);
    }
    return {s3 && s0s2, d.str()};
}

Verdict nonexistence_safety()
{
    auto t0 = Clock::now();
    OracleGame og(testing::load_fixture("safety.xg"));
    std::size_t edges = 0;
    for (auto [u, v] : og.game().edges) edges += og.owner(u) == 1;
    auto found = search_safety_restrictions(og, 1);
    double t = seconds_since(t0);
    std::ostringstream d;
    d << ((1u << edges) - 1) << " proper subsets of " << edges << " player-1 edges, " << found.size()
      << " satisfiable, time=" << fmt_seconds(t);
    return {found.empty() && edges == 5 && t < 5.0, d.str()};
}

// Shared random suite for criteria 5 and 6.
std::vector<ExplicitGame> random_suite(std::uint64_t seed, std::size_t count)
{
    std::mt19937_64 rng(seed);
    testing::RandomGameConfig c;
    c.max_nodes = 32;
    c.max_players = 3;
    c.max_goals = 3;
    std::vector<ExplicitGame> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(testing::random_game(rng, c));
    return out;
}

Verdict schedule_equivalence()
{
    auto t0 = Clock::now();
    auto suite = random_suite(2026, 500);
    std::size_t failures = 0, nonempty = 0;
    for (const auto& eg : suite) {
        auto [g, ex] = testing::encode(eg);
        auto goals = all_goals(g);
        auto flat = coop_flat(g, goals).coop;
        auto grouped = coop_grouped(g, goals).coop;
        auto iterated = coop_iterated(g, goals).coop;
        auto reference = coop_explicit(OracleGame(eg));
        bool ok = flat == grouped && grouped == iterated && ex.set_of(g, flat) == reference;
        failures += !ok;
        nonempty += !reference.empty();
    }
    double t = seconds_since(t0);
    std::ostringstream d;
    d << suite.size() << " games (" << nonempty << " with nonempty coop), " << failures
      << " failures, time=" << fmt_seconds(t);
    return {failures == 0 && t < 120.0, d.str()};
}

Verdict variant_property()
{
    auto suite = random_suite(2026, 500);
    std::size_t failures = 0, longest = 0;
    for (const auto& eg : suite) {
        auto [g, ex] = testing::encode(eg);
        auto r = coop_iterated(g, all_goals(g));
        bool ok = !r.iterations.empty() && r.iterations.back() == r.coop;
        for (std::size_t k = 0; k < r.iterations.size(); ++k) {
            ok = ok && r.coop.subset_of(r.iterations[k]);
            if (k > 0) ok = ok && g.node_count(r.iterations[k]) < g.node_count(r.iterations[k - 1]);
        }
        failures += !ok;
        longest = std::max(longest, r.iterations.size());
    }
    std::ostringstream d;
    d << suite.size() << " traces, longest " << longest << " iterates, " << failures << " failures";
    return {failures == 0, d.str()};
}

Verdict complexity()
{
    auto suite = random_suite(2026, 500);
    std::size_t runs = 0, failures = 0;
    double worst_ratio = 0, worst_run_ratio = 0;
    std::size_t max_depth = 0;
    for (const auto& eg : suite) {
        auto [g, ex] = testing::encode(eg);
        auto report = synthesize(g);
        if (!report.satisfiable) continue;
        ++runs;
        auto sigma = static_cast<double>(g.node_count(report.restricted->sigma));
        worst_run_ratio = std::max(worst_run_ratio, static_cast<double>(report.cpre_calls) / (6 * sigma * sigma));
        for (const auto& stack : report.contract.stacks) {
            double ratio = static_cast<double>(stack.cpre_calls) / (6 * sigma * sigma);
            worst_ratio = std::max(worst_ratio, ratio);
            bool ok = ratio <= 1.0 && static_cast<double>(stack.depth()) <= sigma;
            failures += !ok;
            max_depth = std::max(max_depth, stack.depth());
        }
    }
    std::ostringstream d;
    d.precision(3);
    d << runs << " synthesis runs, max cpre_calls/(6|S|^2) per stack = " << worst_ratio << ", per run = " << worst_run_ratio
      << ", max depth "
      << max_depth << ", " << failures << " failures";
    return {failures == 0 && runs > 0, d.str()};
}

Verdict closure_restriction()
{
    auto eg = testing::load_fixture("lack_of_closure.xg");
    auto [g, ex] = testing::encode(eg);
    auto r = compute_coop(g, all_goals(g), Schedule::grouped);
    auto coop = ex.set_of(g, r.coop);
    auto b = ex.predicate_of(g, named(eg, {"b"}));
    auto c = ex.predicate_of(g, named(eg, {"c"}));
    bool edge_before = !(g.transition & b & g.prime(c)).is_false();
    bool edge_after = !(g.transition & r.rho_c & b & g.prime(c)).is_false();
    bool excluded = !coop.count(eg.index_of("c")) && !coop.count(eg.index_of("d"));
    std::ostringstream d;
    d << "coop=" << show(eg, coop) << " edge (b,c) " << (edge_before ? "present" : "absent") << " before, "
      << (edge_after ? "present" : "absent") << " after restriction";
    return {edge_before && !edge_after && excluded, d.str()};
}

Verdict runtime_soundness()
{
    std::mt19937_64 rng(909);
    testing::RandomGameConfig c;
    c.max_nodes = 8;
    c.max_players = 2;
    c.max_goals = 3;
    std::size_t instances = 0, failures = 0, worst = 0, plays = 0;
    std::string first_failure;
    while (instances < 100) {
        auto eg = testing::random_game(rng, c);
        auto g = build_game(encode_explicit(eg));
        auto ex = expand_explicit(g);
        auto report = synthesize(g);
        if (!report.satisfiable) continue;
        ++instances;
        auto st = extract_strategy(report, ex);
        auto sigma = static_cast<std::size_t>(g.node_count(g.sigma));
        bool ok = true;
        std::string why;

        // Every opponent choice: the announced goal is reached in time.
        auto ex_result = check_exhaustive(st);
        std::size_t max_depth = 0;
        for (const auto& s : st.stacks) max_depth = std::max(max_depth, s.depth);
        if (!ex_result.ok || ex_result.worst_steps > sigma * std::max<std::size_t>(max_depth, 1)) {
            ok = false;
            why = ex_result.failure;
        }
        worst = std::max(worst, ex_result.worst_steps);

        // Leader rotation: every goal announced and achieved within the lasso.
        std::set<std::pair<int, int>> all;
        for (const auto& s : st.stacks) all.insert({s.player, s.goal_index});
        for (auto policy : {Policy::cooperative, Policy::adversarial}) {
            for (int start : st.coop) {
                SimulationConfig sc;
                sc.start = start;
                sc.policy = policy;
                sc.steps = 100000;
                auto trace = simulate(st, sc);
                ++plays;
                if (!trace.lasso_start || trace.achieved_in_cycle != all) {
                    ok = false;
                    why = "lasso from " + eg.names[static_cast<std::size_t>(start)] + " misses a goal";
                }
            }
        }
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = why;
        }
    }
    std::ostringstream d;
    d << instances << " instances, " << plays << " lasso plays, worst wait " << worst << " moves, " << failures
      << " failures";
    if (!first_failure.empty()) d << " (first: " << first_failure << ")";
    return {failures == 0, d.str()};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> criteria{
        {1, "walkthrough reproduction", walkthrough},
        {2, "nonexistence of recurrence", nonexistence_recurrence},
        {3, "single-goal assumptions", single_goal_assumptions},
        {4, "nonexistence of safety", nonexistence_safety},
        {5, "schedule equivalence", schedule_equivalence},
        {6, "variant property", variant_property},
        {7, "complexity instrumentation", complexity},
        {8, "closure restriction", closure_restriction},
        {9, "runtime soundness", runtime_soundness},
    };
    std::set<int> selected;
    for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
    int failed = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << c.id << " " << (v.pass ? "PASS" : "FAIL") << " " << c.name << ": " << v.detail
                  << std::endl;
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
