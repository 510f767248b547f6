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

#include "nestedgr1/game.hpp"

#include <algorithm>
#include <map>

namespace nestedgr1 {

Predicate GameStructure::others(int j) const
{
    auto acc = store->top();
    for (std::size_t k = 0; k < lifted.size(); ++k)
        if (static_cast<int>(k) != j) acc &= lifted[k];
    return acc;
}

double GameStructure::node_count(const Predicate& p) const
{
    return store->sat_count(p & sigma, table.unprimed());
}

bool GameStructure::is_node_predicate(const Predicate& p) const
{
    auto support = store->support(p);
    return std::none_of(support.begin(), support.end(), [](unsigned v) { return v % 2 == 1; });
}

namespace {

Predicate frame(Store& store, const VariableTable& table, int owner)
{
    auto acc = store.top();
    for (const auto& v : table.variables())
        if (v.owner == owner) acc &= store.var(v.primed).iff(store.var(v.unprimed));
    return acc;
}

}  // namespace

GameStructure build_game(std::shared_ptr<Store> store, const VariableTable& table, std::vector<Predicate> raw,
                         Predicate domain, std::vector<std::vector<Predicate>> goals)
{
    auto n = table.players();
    if (raw.size() != n) throw SpecError("expected exactly one action per player");

    GameStructure g;
    g.store = store;
    g.table = table;
    g.raw = std::move(raw);

    std::vector<std::pair<unsigned, unsigned>> forward;
    for (const auto& v : table.variables()) forward.emplace_back(v.unprimed, v.primed);
    std::vector<std::pair<unsigned, unsigned>> backward;
    for (auto [a, b] : forward) backward.emplace_back(b, a);
    g.to_primed = store->make_rename(forward);
    g.to_unprimed = store->make_rename(backward);
    g.unprimed_cube = store->cube(table.unprimed());
    g.primed_cube = store->cube(table.primed());

    auto valid_turn = store->bottom();
    for (std::size_t j = 0; j < n; ++j) {
        g.turn.push_back(turn_is(table, *store, static_cast<int>(j)));
        valid_turn |= g.turn.back();
    }

    for (std::size_t j = 0; j < n; ++j) {
        auto me = static_cast<int>(j);
        auto next_turn = turn_is(table, *store, static_cast<int>((j + 1) % n), true);
        // Only the mover may prime its own and the shared variables.
        for (auto v : store->support(g.raw[j])) {
            if (v % 2 == 0) continue;
            const auto& var = table.variables()[v / 2];
            if (var.owner != me && var.owner != VariableTable::shared_owner)
                throw SpecError("action of player " + std::to_string(j) + " primes '" + var.name + "'");
        }
        g.lifted.push_back(store->ite(g.turn[j], g.raw[j] & next_turn, frame(*store, table, me)));
    }

    g.sigma = domain & valid_turn;
    if (!g.is_node_predicate(g.sigma)) throw SpecError("domain mentions primed variables");
    // others(-1) is the conjunction over every player.
    g.transition = g.others(-1) & g.sigma & g.prime(g.sigma);

    g.goals = std::move(goals);
    g.goals.resize(n);
    for (auto& per : g.goals)
        for (auto& goal : per)
            if (!g.is_node_predicate(goal)) throw SpecError("goal mentions primed variables");
    return g;
}

GameStructure build_game(const GameSpec& spec, std::size_t node_limit)
{
    auto store = std::make_shared<Store>(spec.table.num_store_vars(), node_limit);
    std::vector<Predicate> raw;
    for (const auto& a : spec.actions) {
        if (a.player != static_cast<int>(raw.size())) throw SpecError("actions must be listed in player order");
        raw.push_back(compile_formula(a.formula, spec.table, *store, FormulaMode::action, a.player));
    }
    auto domain = spec.domain ? compile_formula(*spec.domain, spec.table, *store, FormulaMode::node) : store->top();
    std::vector<std::vector<Predicate>> goals(spec.goals.size());
    for (std::size_t j = 0; j < spec.goals.size(); ++j)
        for (const auto& f : spec.goals[j])
            goals[j].push_back(compile_formula(f, spec.table, *store, FormulaMode::node));
    auto g = build_game(store, spec.table, std::move(raw), domain, std::move(goals));
    g.explicit_source = spec.explicit_source;
    return g;
}

GameStructure restrict_game(const GameStructure& g, const Predicate& coop)
{
    GameStructure r = g;
    auto c = coop & g.sigma;
    auto rho_c = c & g.prime(c);
    for (auto& l : r.lifted) l &= rho_c;
    r.transition = g.transition & rho_c;
    r.sigma = c;
    return r;
}

std::vector<Predicate> effective_goals(const GameStructure& g, int j)
{
    const auto& goals = g.goals.at(static_cast<std::size_t>(j));
    if (goals.empty()) return {g.sigma};
    return goals;
}

std::vector<Gr1Objective> build_objectives(const GameStructure& g)
{
    std::vector<Gr1Objective> out;
    for (std::size_t j = 0; j < g.players(); ++j) {
        auto me = static_cast<int>(j);
        Gr1Objective o;
        o.player = me;
        o.env_safety = g.others(me);
        o.sys_safety = g.lifted[j];
        o.sys_recurrences = effective_goals(g, me);
        out.push_back(std::move(o));
    }
    return out;
}

std::set<int> Expansion::set_of(const GameStructure& g, const Predicate& p) const
{
    std::set<int> out;
    std::vector<bool> full(g.table.num_store_vars(), false);
    const auto& vars = g.table.unprimed();
    for (std::size_t k = 0; k < assignments.size(); ++k) {
        for (std::size_t b = 0; b < vars.size(); ++b) full[vars[b]] = assignments[k][b];
        if (g.store->eval(p, full)) out.insert(static_cast<int>(k));
    }
    return out;
}

Predicate Expansion::predicate_of(const GameStructure& g, const std::set<int>& nodes) const
{
    auto acc = g.store->bottom();
    for (int k : nodes) acc |= g.store->minterm(g.table.unprimed(), assignments.at(static_cast<std::size_t>(k)));
    return acc;
}

int Expansion::node_of(const std::vector<bool>& unprimed_values) const
{
    auto it = std::find(assignments.begin(), assignments.end(), unprimed_values);
    return it == assignments.end() ? -1 : static_cast<int>(it - assignments.begin());
}

Expansion expand_explicit(const GameStructure& g, std::size_t limit)
{
    const auto& table = g.table;
    const auto& unprimed = table.unprimed();
    const auto& primed = table.primed();
    auto count = g.node_count(g.store->top());
    if (count > static_cast<double>(limit))
        throw ResourceError("node space has " + std::to_string(static_cast<long long>(count)) +
                            " nodes, above the expansion ceiling " + std::to_string(limit));

    auto turn_of = [&](const std::vector<bool>& a) {
        int t = 0;
        for (unsigned b = 0; b < table.turn_bits(); ++b) t |= a[b] ? (1 << b) : 0;
        return t;
    };
    // Shared variables follow the turn bits in the unprimed list.
    auto position_of = [&](const std::vector<bool>& a) {
        int p = 0;
        for (std::size_t b = 0; b < table.shared().size(); ++b) p |= a[table.turn_bits() + b] ? (1 << b) : 0;
        return p;
    };

    std::vector<std::vector<bool>> nodes;
    g.store->for_each_sat(g.sigma, unprimed, [&](const std::vector<bool>& a) { nodes.push_back(a); });
    if (g.explicit_source) {
        std::stable_sort(nodes.begin(), nodes.end(),
                         [&](const auto& a, const auto& b) { return position_of(a) < position_of(b); });
    }

    Expansion ex;
    ex.assignments = nodes;
    ex.game.players = table.players();
    std::map<std::vector<bool>, int> index;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto& a = nodes[k];
        index.emplace(a, static_cast<int>(k));
        ex.game.owner.push_back(turn_of(a));
        if (g.explicit_source && static_cast<std::size_t>(position_of(a)) < g.explicit_source->size()) {
            ex.game.names.push_back(g.explicit_source->names[static_cast<std::size_t>(position_of(a))]);
        } else {
            std::string name = "t" + std::to_string(turn_of(a));
            for (std::size_t b = table.turn_bits(); b < a.size(); ++b)
                name += "," + table.variables()[b].name + "=" + (a[b] ? "1" : "0");
            ex.game.names.push_back(std::move(name));
        }
    }

    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto succ = g.store->restrict(g.transition, unprimed, nodes[k]);
        g.store->for_each_sat(succ, primed, [&](const std::vector<bool>& b) {
            auto it = index.find(b);
            if (it == index.end()) throw std::logic_error("successor outside the node domain");
            ex.game.edges.insert({static_cast<int>(k), it->second});
        });
    }

    ex.game.goals.resize(table.players());
    for (std::size_t j = 0; j < g.goals.size(); ++j)
        for (const auto& goal : g.goals[j]) ex.game.goals[j].push_back(ex.set_of(g, goal));
    return ex;
}

}  // namespace nestedgr1
