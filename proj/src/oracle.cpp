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

#include "nestedgr1/oracle.hpp"

#include "nestedgr1/bdd.hpp"

#include <algorithm>
#include <functional>

namespace nestedgr1 {

OracleGame::OracleGame(ExplicitGame g) : game_(std::move(g))
{
    validate(game_);
    succ_ = game_.successors();
    pred_ = game_.predecessors();
}

NodeSet OracleGame::all() const
{
    NodeSet s;
    for (std::size_t u = 0; u < size(); ++u) s.insert(static_cast<int>(u));
    return s;
}

OracleGame OracleGame::with_edges(const EdgeSet& edges) const
{
    auto g = game_;
    g.edges = edges;
    return OracleGame(std::move(g));
}

namespace explicit_ops {

NodeSet pre(const OracleGame& g, const NodeSet& f)
{
    NodeSet out;
    for (int v : f)
        for (int u : g.predecessors(v)) out.insert(u);
    return out;
}

NodeSet pre(const OracleGame& g, int j, const NodeSet& f)
{
    NodeSet out;
    for (int u : pre(g, f))
        if (g.owner(u) == j) out.insert(u);
    return out;
}

NodeSet pre_star(const OracleGame& g, const NodeSet& f)
{
    NodeSet out = f;
    std::vector<int> work(f.begin(), f.end());
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int u : g.predecessors(v))
            if (out.insert(u).second) work.push_back(u);
    }
    return out;
}

NodeSet cpre(const OracleGame& g, PlayerSet coalition, const NodeSet& f)
{
    NodeSet out;
    for (std::size_t k = 0; k < g.size(); ++k) {
        int u = static_cast<int>(k);
        const auto& s = g.successors(u);
        auto in_f = [&](int v) { return f.count(v) != 0; };
        bool ok = contains_player(coalition, g.owner(u)) ? std::any_of(s.begin(), s.end(), in_f)
                                                         : std::all_of(s.begin(), s.end(), in_f);
        if (ok) out.insert(u);
    }
    return out;
}

NodeSet attr(const OracleGame& g, PlayerSet coalition, const NodeSet& f)
{
    // Backward search with a count of successors still outside the set.
    NodeSet out = f;
    std::vector<std::size_t> remaining(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) remaining[u] = g.successors(static_cast<int>(u)).size();
    std::vector<int> work(f.begin(), f.end());
    for (std::size_t k = 0; k < g.size(); ++k) {
        int u = static_cast<int>(k);
        // Opponent nodes without moves are attracted vacuously.
        if (!contains_player(coalition, g.owner(u)) && g.successors(u).empty() && out.insert(u).second)
            work.push_back(u);
    }
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int u : g.predecessors(v)) {
            if (out.count(u)) continue;
            auto& r = remaining[static_cast<std::size_t>(u)];
            --r;
            if (contains_player(coalition, g.owner(u)) || r == 0) {
                out.insert(u);
                work.push_back(u);
            }
        }
    }
    return out;
}

NodeSet trap(const OracleGame& g, PlayerSet coalition, const NodeSet& s, const NodeSet& e)
{
    NodeSet x = g.all();
    for (;;) {
        NodeSet next = e;
        for (int u : cpre(g, coalition, x))
            if (s.count(u)) next.insert(u);
        if (next == x) return x;
        x = std::move(next);
    }
}

}  // namespace explicit_ops

namespace {

// Strongly connected components; returns the component id of every vertex.
std::vector<int> components(const std::vector<std::vector<int>>& adj)
{
    auto n = adj.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int counter = 0, next_comp = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        call.push_back({static_cast<int>(root), 0});
        while (!call.empty()) {
            auto& [v, i] = call.back();
            auto vs = static_cast<std::size_t>(v);
            if (i == 0 && index[vs] < 0) {
                index[vs] = low[vs] = counter++;
                stack.push_back(v);
                on_stack[vs] = 1;
            }
            if (i < adj[vs].size()) {
                int w = adj[vs][i++];
                auto ws = static_cast<std::size_t>(w);
                if (index[ws] < 0) {
                    call.push_back({w, 0});
                } else if (on_stack[ws]) {
                    low[vs] = std::min(low[vs], index[ws]);
                }
                continue;
            }
            if (low[vs] == index[vs]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = next_comp;
                } while (w != v);
                ++next_comp;
            }
            int finished = v;
            call.pop_back();
            if (!call.empty()) {
                auto ps = static_cast<std::size_t>(call.back().first);
                low[ps] = std::min(low[ps], low[static_cast<std::size_t>(finished)]);
            }
        }
    }
    return comp;
}

// Vertices lying in a component with an internal edge that meets every
// one of `sets` (each given as a membership test).
std::vector<char> fair_cycles(const std::vector<std::vector<int>>& adj,
                              const std::vector<std::function<bool(int)>>& sets)
{
    auto comp = components(adj);
    int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<char> nontrivial(static_cast<std::size_t>(count), 0);
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int w : adj[v])
            if (comp[static_cast<std::size_t>(w)] == comp[v]) nontrivial[static_cast<std::size_t>(comp[v])] = 1;
    std::vector<std::vector<char>> meets(sets.size(), std::vector<char>(static_cast<std::size_t>(count), 0));
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (std::size_t k = 0; k < sets.size(); ++k)
            if (sets[k](static_cast<int>(v))) meets[k][static_cast<std::size_t>(comp[v])] = 1;
    std::vector<char> out(adj.size(), 0);
    for (std::size_t v = 0; v < adj.size(); ++v) {
        auto c = static_cast<std::size_t>(comp[v]);
        bool ok = nontrivial[c];
        for (const auto& m : meets) ok = ok && m[c];
        out[v] = ok;
    }
    return out;
}

std::vector<NodeSet> or_all(const OracleGame& g, const std::vector<NodeSet>& sets)
{
    return sets.empty() ? std::vector<NodeSet>{g.all()} : sets;
}

NodeSet complement(const OracleGame& g, const NodeSet& s)
{
    NodeSet out;
    for (std::size_t u = 0; u < g.size(); ++u)
        if (!s.count(static_cast<int>(u))) out.insert(static_cast<int>(u));
    return out;
}

NodeSet intersect(const NodeSet& a, const NodeSet& b)
{
    NodeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

NodeSet unite(const NodeSet& a, const NodeSet& b)
{
    NodeSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

}  // namespace

NodeSet coop_explicit(const OracleGame& g, const std::vector<std::vector<NodeSet>>& goals)
{
    std::vector<std::vector<int>> adj(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) adj[u] = g.successors(static_cast<int>(u));
    std::vector<std::function<bool(int)>> tests;
    for (const auto& per : goals)
        for (const auto& s : per) tests.push_back([&s](int v) { return s.count(v) != 0; });
    auto fair = fair_cycles(adj, tests);
    NodeSet seeds;
    for (std::size_t u = 0; u < g.size(); ++u)
        if (fair[u]) seeds.insert(static_cast<int>(u));
    return explicit_ops::pre_star(g, seeds);
}

NodeSet coop_explicit(const OracleGame& g) { return coop_explicit(g, g.game().goals); }

NodeSet gr1_realizable(const OracleGame& g, const RealizabilityQuery& q)
{
    using namespace explicit_ops;
    if (q.quantifier == RealizabilityQuery::Quantifier::cooperative) return coop_explicit(g, {q.guarantees});

    auto assumptions = or_all(g, q.assumptions);
    auto guarantees = or_all(g, q.guarantees);
    auto s = q.system;
    NodeSet z = g.all();
    for (;;) {
        NodeSet z_next = g.all();
        for (const auto& goal : guarantees) {
            auto reach_goal = intersect(goal, cpre(g, s, z));
            NodeSet y;
            for (;;) {
                auto y_base = unite(reach_goal, cpre(g, s, y));
                NodeSet y_next;
                for (const auto& a : assumptions) {
                    auto not_a = complement(g, a);
                    NodeSet x = g.all();
                    for (;;) {
                        auto x_next = unite(y_base, intersect(not_a, cpre(g, s, x)));
                        if (x_next == x) break;
                        x = std::move(x_next);
                    }
                    y_next = unite(y_next, x);
                }
                if (y_next == y) break;
                y = std::move(y_next);
            }
            z_next = intersect(z_next, y);
        }
        if (z_next == z) return z;
        z = std::move(z_next);
    }
}

NodeSet gr1_realizable_bruteforce(const OracleGame& g, const RealizabilityQuery& q, std::size_t strategy_limit)
{
    if (q.quantifier == RealizabilityQuery::Quantifier::cooperative) return coop_explicit(g, {q.guarantees});
    auto assumptions = or_all(g, q.assumptions);
    auto guarantees = or_all(g, q.guarantees);
    auto n = g.size();
    auto rounds = guarantees.size();
    auto states = n * rounds;
    auto state = [&](int u, std::size_t r) { return static_cast<std::size_t>(u) * rounds + r; };

    // Decision points: (system node with moves, counter value).
    std::vector<std::size_t> decisions;
    double total = 1;
    for (std::size_t u = 0; u < n; ++u) {
        const auto& s = g.successors(static_cast<int>(u));
        if (!contains_player(q.system, g.owner(static_cast<int>(u))) || s.empty()) continue;
        for (std::size_t r = 0; r < rounds; ++r) {
            decisions.push_back(state(static_cast<int>(u), r));
            total *= static_cast<double>(s.size());
        }
    }
    if (total > static_cast<double>(strategy_limit))
        throw ResourceError("too many strategies for exhaustive enumeration");

    std::vector<std::size_t> choice(states, 0);
    NodeSet winning;
    for (;;) {
        // Product graph under the fixed strategy, with states leaving the
        // current goal layer cut off for the cycle test.
        std::vector<std::vector<int>> adj(states), avoiding(states);
        std::vector<char> sys_dead(states, 0);
        for (std::size_t u = 0; u < n; ++u) {
            auto ui = static_cast<int>(u);
            const auto& s = g.successors(ui);
            bool mine = contains_player(q.system, g.owner(ui));
            for (std::size_t r = 0; r < rounds; ++r) {
                auto here = state(ui, r);
                bool at_goal = guarantees[r].count(ui) != 0;
                auto next_r = at_goal ? (r + 1) % rounds : r;
                if (mine && s.empty()) sys_dead[here] = 1;
                for (std::size_t k = 0; k < s.size(); ++k) {
                    if (mine && k != choice[here]) continue;
                    auto there = static_cast<int>(state(s[k], next_r));
                    adj[here].push_back(there);
                    if (!at_goal && next_r == r) avoiding[here].push_back(there);
                }
            }
        }
        std::vector<std::function<bool(int)>> tests;
        for (const auto& a : assumptions)
            tests.push_back([&a, rounds](int st) { return a.count(st / static_cast<int>(rounds)) != 0; });
        auto bad_cycle = fair_cycles(avoiding, tests);
        // A state loses for the system if it reaches a deadlock or a bad cycle.
        std::vector<char> bad(states, 0);
        std::vector<int> work;
        for (std::size_t st = 0; st < states; ++st) {
            auto u = static_cast<int>(st / rounds);
            bool in_avoid_layer = guarantees[st % rounds].count(u) == 0;
            if (sys_dead[st] || (bad_cycle[st] && in_avoid_layer)) {
                bad[st] = 1;
                work.push_back(static_cast<int>(st));
            }
        }
        std::vector<std::vector<int>> radj(states);
        for (std::size_t st = 0; st < states; ++st)
            for (int t : adj[st]) radj[static_cast<std::size_t>(t)].push_back(static_cast<int>(st));
        while (!work.empty()) {
            auto t = static_cast<std::size_t>(work.back());
            work.pop_back();
            for (int p : radj[t])
                if (!bad[static_cast<std::size_t>(p)]) {
                    bad[static_cast<std::size_t>(p)] = 1;
                    work.push_back(p);
                }
        }
        for (std::size_t u = 0; u < n; ++u)
            if (!bad[state(static_cast<int>(u), 0)]) winning.insert(static_cast<int>(u));

        // Next strategy in mixed-radix order.
        std::size_t d = 0;
        for (; d < decisions.size(); ++d) {
            auto st = decisions[d];
            auto degree = g.successors(static_cast<int>(st / rounds)).size();
            if (++choice[st] < degree) break;
            choice[st] = 0;
        }
        if (d == decisions.size()) break;
    }
    return winning;
}

bool holds(const OracleGame& g, const RealizabilityQuery& q)
{
    auto win = gr1_realizable(g, q);
    return std::includes(win.begin(), win.end(), q.from_nodes.begin(), q.from_nodes.end());
}

std::vector<NodeSet> search_node_assumptions(const OracleGame& g, const std::vector<NodeSet>& goals, int j,
                                             const std::optional<NodeSet>& from)
{
    auto n = g.size();
    if (n > max_assumption_search_nodes)
        throw ResourceError("assumption search is limited to " + std::to_string(max_assumption_search_nodes) +
                            " nodes");
    std::vector<std::vector<NodeSet>> own(g.game().players);
    own[static_cast<std::size_t>(j)] = goals;
    auto start = from ? *from : coop_explicit(g, own);
    auto me = single_player(j);
    auto rest = all_players(g.game().players) & ~me;

    std::vector<NodeSet> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        NodeSet p;
        for (std::size_t u = 0; u < n; ++u)
            if ((mask >> u) & 1) p.insert(static_cast<int>(u));
        RealizabilityQuery provide;
        provide.system = rest;
        provide.guarantees = {p};
        provide.from_nodes = start;
        if (!holds(g, provide)) continue;
        RealizabilityQuery use;
        use.system = me;
        use.assumptions = {p};
        use.guarantees = goals;
        use.from_nodes = start;
        if (holds(g, use)) found.push_back(std::move(p));
    }
    return found;
}

std::vector<EdgeSet> search_safety_restrictions(const OracleGame& g, int player)
{
    std::vector<std::pair<int, int>> own;
    EdgeSet fixed;
    for (auto e : g.game().edges) {
        if (g.owner(e.first) == player) {
            own.push_back(e);
        } else {
            fixed.insert(e);
        }
    }
    if (own.size() > max_restriction_search_edges)
        throw ResourceError("restriction search is limited to " + std::to_string(max_restriction_search_edges) +
                            " edges");
    std::vector<EdgeSet> found;
    auto full = (std::uint64_t{1} << own.size()) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        EdgeSet edges = fixed;
        EdgeSet chosen;
        for (std::size_t k = 0; k < own.size(); ++k)
            if ((mask >> k) & 1) {
                edges.insert(own[k]);
                chosen.insert(own[k]);
            }
        if (!coop_explicit(g.with_edges(edges)).empty()) found.push_back(std::move(chosen));
    }
    return found;
}

}  // namespace nestedgr1
