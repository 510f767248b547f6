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

#include "nestedgr1/spec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nestedgr1 {

namespace {

bool is_identifier(std::string_view s)
{
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

void check_name(const std::string& name, std::set<std::string>& seen)
{
    if (!is_identifier(name)) throw SpecError("invalid variable name '" + name + "'");
    if (name == "true" || name == "false" || turn_atom_index(name) >= 0)
        throw SpecError("reserved variable name '" + name + "'");
    if (!seen.insert(name).second) throw SpecError("variable '" + name + "' has more than one owner");
}

}  // namespace

VariableTable::VariableTable(std::size_t players, std::vector<std::vector<std::string>> owned,
                             std::vector<std::string> shared)
    : players_(players), owned_(std::move(owned)), shared_(std::move(shared))
{
    if (players_ < 2) throw SpecError("a game needs at least two players");
    if (players_ > 31) throw SpecError("at most 31 players are supported");
    if (owned_.size() > players_) throw SpecError("ownership refers to an unknown player");
    owned_.resize(players_);

    while ((std::size_t{1} << turn_bits_) < players_) ++turn_bits_;

    std::set<std::string> seen;
    auto add = [&](std::string name, int owner) {
        auto p = static_cast<unsigned>(vars_.size());
        if (owner != turn_owner) index_.emplace(name, vars_.size());
        vars_.push_back({std::move(name), owner, 2 * p, 2 * p + 1});
        unprimed_.push_back(2 * p);
        primed_.push_back(2 * p + 1);
        if (owner == turn_owner) {
            turn_unprimed_.push_back(2 * p);
            turn_primed_.push_back(2 * p + 1);
        }
    };
    for (unsigned b = 0; b < turn_bits_; ++b) add("turn.bit" + std::to_string(b), turn_owner);
    for (const auto& name : shared_) {
        check_name(name, seen);
        add(name, shared_owner);
    }
    for (std::size_t j = 0; j < players_; ++j) {
        for (const auto& name : owned_[j]) {
            check_name(name, seen);
            add(name, static_cast<int>(j));
        }
    }
}

const VariableTable::Variable* VariableTable::find(std::string_view name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &vars_[it->second];
}

std::vector<unsigned> VariableTable::unprimed_of(int owner) const
{
    std::vector<unsigned> out;
    for (const auto& v : vars_)
        if (v.owner == owner) out.push_back(v.unprimed);
    return out;
}

std::vector<unsigned> VariableTable::primed_of(int owner) const
{
    std::vector<unsigned> out;
    for (const auto& v : vars_)
        if (v.owner == owner) out.push_back(v.primed);
    return out;
}

int ExplicitGame::index_of(std::string_view name) const
{
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return static_cast<int>(k);
    return -1;
}

std::vector<std::vector<int>> ExplicitGame::successors() const
{
    std::vector<std::vector<int>> out(size());
    for (auto [u, v] : edges) out[static_cast<std::size_t>(u)].push_back(v);
    return out;
}

std::vector<std::vector<int>> ExplicitGame::predecessors() const
{
    std::vector<std::vector<int>> out(size());
    for (auto [u, v] : edges) out[static_cast<std::size_t>(v)].push_back(u);
    for (auto& l : out) std::sort(l.begin(), l.end());
    return out;
}

void validate(const ExplicitGame& g)
{
    if (g.players < 2) throw SpecError("a game needs at least two players");
    if (g.owner.size() != g.names.size()) throw SpecError("every node needs exactly one owner");
    std::set<std::string> names;
    for (std::size_t u = 0; u < g.size(); ++u) {
        if (!names.insert(g.names[u]).second) throw SpecError("node '" + g.names[u] + "' declared twice");
        if (g.owner[u] < 0 || static_cast<std::size_t>(g.owner[u]) >= g.players)
            throw SpecError("node '" + g.names[u] + "' has an unknown owner");
    }
    auto n = static_cast<int>(g.size());
    for (auto [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw SpecError("edge refers to an unknown node");
        auto expected = (g.owner[static_cast<std::size_t>(u)] + 1) % static_cast<int>(g.players);
        if (g.owner[static_cast<std::size_t>(v)] != expected)
            throw SpecError("edge " + g.names[static_cast<std::size_t>(u)] + " -> " +
                            g.names[static_cast<std::size_t>(v)] + " does not alternate turns");
    }
    if (g.goals.size() > g.players) throw SpecError("goal references an unknown player");
    for (const auto& per_player : g.goals)
        for (const auto& goal : per_player)
            for (int u : goal)
                if (u < 0 || u >= n) throw SpecError("goal refers to an unknown node");
}

Predicate turn_is(const VariableTable& table, Store& store, int k, bool primed)
{
    const auto& bits = primed ? table.turn_primed() : table.turn_unprimed();
    if (k < 0 || static_cast<std::size_t>(k) >= (std::size_t{1} << bits.size())) return store.bottom();
    std::vector<bool> values;
    for (std::size_t b = 0; b < bits.size(); ++b) values.push_back((k >> b) & 1);
    return store.minterm(bits, values);
}

Predicate compile_formula(const Formula& f, const VariableTable& table, Store& store, FormulaMode mode, int player)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::constant: return store.constant(f.value());
    case K::variable: {
        auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, f.column()); };
        int k = turn_atom_index(f.name());
        if (k >= 0) {
            if (mode == FormulaMode::action) fail("turn condition not allowed in an action");
            if (f.primed() && mode == FormulaMode::node) fail("primed '" + f.name() + "' in a node predicate");
            return turn_is(table, store, k, f.primed());
        }
        const auto* v = table.find(f.name());
        if (!v) fail("undeclared variable '" + f.name() + "'");
        if (!f.primed()) return store.var(v->unprimed);
        if (mode == FormulaMode::node) fail("primed '" + f.name() + "' in a node predicate");
        if (mode == FormulaMode::action && v->owner != player && v->owner != VariableTable::shared_owner)
            fail("player " + std::to_string(player) + " cannot prime '" + f.name() + "'");
        return store.var(v->primed);
    }
    case K::negation: return !compile_formula(f.operands()[0], table, store, mode, player);
    case K::conjunction: {
        auto acc = store.top();
        for (const auto& op : f.operands()) acc &= compile_formula(op, table, store, mode, player);
        return acc;
    }
    case K::disjunction: {
        auto acc = store.bottom();
        for (const auto& op : f.operands()) acc |= compile_formula(op, table, store, mode, player);
        return acc;
    }
    case K::implication:
        return compile_formula(f.operands()[0], table, store, mode, player)
            .implies(compile_formula(f.operands()[1], table, store, mode, player));
    case K::equivalence:
        return compile_formula(f.operands()[0], table, store, mode, player)
            .iff(compile_formula(f.operands()[1], table, store, mode, player));
    }
    throw std::logic_error("unknown formula kind");
}

Predicate parse_formula(std::string_view text, const VariableTable& table, Store& store, FormulaMode mode,
                        int player)
{
    return compile_formula(parse_formula_text(text), table, store, mode, player);
}

namespace {

struct Line {
    std::size_t number;
    std::string text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string line(text.substr(pos, end - pos));
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) out.push_back({number, line});
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::string first_word(const std::string& s)
{
    auto w = words(s);
    return w.empty() ? std::string() : w.front();
}

// Splits "head: tail" at the first colon.
std::pair<std::string, std::string> split_colon(const Line& l)
{
    auto c = l.text.find(':');
    if (c == std::string::npos) throw ParseError("expected ':'", l.number, l.text.size() + 1);
    return {l.text.substr(0, c), l.text.substr(c + 1)};
}

int parse_index(const std::string& w, const Line& l)
{
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        w.size() > 6)
        throw ParseError("expected an index, found '" + w + "'", l.number, l.text.find(w) + 1);
    return std::stoi(w);
}

// Converts a map of goal index -> value into a dense vector.
template <typename T>
std::vector<T> dense_goals(const std::map<int, T>& m, int player)
{
    std::vector<T> out;
    for (const auto& [k, v] : m) {
        if (k != static_cast<int>(out.size()))
            throw SpecError("goal indices of player " + std::to_string(player) + " are not dense from 0");
        out.push_back(v);
    }
    return out;
}

}  // namespace

GameSpec parse_symbolic_spec(std::string_view text)
{
    std::size_t players = 0;
    std::vector<std::string> shared;
    std::map<int, std::vector<std::string>> owned;
    std::map<int, std::pair<Line, std::string>> actions;
    std::map<int, std::map<int, std::pair<Line, std::string>>> goals;
    std::optional<std::pair<Line, std::string>> domain;

    for (const auto& l : split_lines(text)) {
        auto kw = first_word(l.text);
        auto kw_col = l.text.find(kw) + 1;
        if (kw == "players") {
            auto w = words(l.text);
            if (w.size() != 2) throw ParseError("expected 'players <n>'", l.number, kw_col);
            players = static_cast<std::size_t>(parse_index(w[1], l));
            continue;
        }
        auto [head, tail] = split_colon(l);
        auto hw = words(head);
        auto body_col = head.size() + 1;
        if (hw[0] == "shared" && hw.size() == 1) {
            for (auto& v : words(tail)) shared.push_back(v);
        } else if (hw[0] == "owns" && hw.size() == 2) {
            auto& list = owned[parse_index(hw[1], l)];
            for (auto& v : words(tail)) list.push_back(v);
        } else if (hw[0] == "action" && hw.size() == 2) {
            int j = parse_index(hw[1], l);
            if (!actions.emplace(j, std::pair{Line{l.number, std::string(body_col, ' ') + tail}, tail}).second)
                throw SpecError("player " + std::to_string(j) + " has more than one action");
        } else if (hw[0] == "goal" && hw.size() == 3) {
            int j = parse_index(hw[1], l);
            int k = parse_index(hw[2], l);
            if (!goals[j].emplace(k, std::pair{Line{l.number, std::string(body_col, ' ') + tail}, tail}).second)
                throw SpecError("goal " + std::to_string(j) + " " + std::to_string(k) + " declared twice");
        } else if (hw[0] == "domain" && hw.size() == 1) {
            if (domain) throw SpecError("domain declared twice");
            domain = std::pair{Line{l.number, std::string(body_col, ' ') + tail}, tail};
        } else {
            throw ParseError("unknown declaration '" + head + "'", l.number, kw_col);
        }
    }

    auto max_player = [](const auto& m) { return m.empty() ? 0 : static_cast<std::size_t>(m.rbegin()->first) + 1; };
    if (players == 0) players = std::max({std::size_t{2}, max_player(owned), max_player(actions)});
    if (max_player(owned) > players || max_player(actions) > players) throw SpecError("declaration for unknown player");
    if (max_player(goals) > players) throw SpecError("goal references an unknown player");

    std::vector<std::vector<std::string>> owned_list(players);
    for (auto& [j, vars] : owned) owned_list[static_cast<std::size_t>(j)] = vars;

    GameSpec spec;
    spec.table = VariableTable(players, std::move(owned_list), std::move(shared));

    // Names are checked here so that errors carry positions.
    Store scratch(spec.table.num_store_vars(), 1 << 16);
    auto parse_checked = [&](const std::pair<Line, std::string>& src, FormulaMode mode, int player) {
        auto f = parse_formula_text(src.second, src.first.number, src.first.text.size() - src.second.size());
        try {
            compile_formula(f, spec.table, scratch, mode, player);
        } catch (const ParseError& e) {
            throw ParseError(e.message(), src.first.number, e.column());
        }
        return f;
    };

    for (std::size_t j = 0; j < players; ++j) {
        auto it = actions.find(static_cast<int>(j));
        if (it == actions.end()) throw SpecError("player " + std::to_string(j) + " has no action");
        spec.actions.push_back({static_cast<int>(j), parse_checked(it->second, FormulaMode::action, static_cast<int>(j))});
    }
    spec.goals.resize(players);
    for (auto& [j, per] : goals) {
        std::map<int, Formula> parsed;
        for (auto& [k, src] : per) parsed.emplace(k, parse_checked(src, FormulaMode::node, -1));
        spec.goals[static_cast<std::size_t>(j)] = dense_goals(parsed, j);
    }
    if (domain) spec.domain = parse_checked(*domain, FormulaMode::node, -1);
    return spec;
}

ExplicitGame parse_explicit_game(std::string_view text)
{
    ExplicitGame g;
    std::size_t declared_players = 0;
    std::map<std::string, int> ids;
    std::vector<std::pair<Line, std::pair<std::string, std::string>>> edge_lines;
    std::map<int, std::map<int, std::pair<Line, std::vector<std::string>>>> goal_lines;
    int max_owner = 1;

    for (const auto& l : split_lines(text)) {
        auto kw = first_word(l.text);
        auto kw_col = l.text.find(kw) + 1;
        if (kw == "players") {
            auto w = words(l.text);
            if (w.size() != 2) throw ParseError("expected 'players <n>'", l.number, kw_col);
            declared_players = static_cast<std::size_t>(parse_index(w[1], l));
        } else if (kw == "edge") {
            auto w = words(l.text);
            if (w.size() != 3) throw ParseError("expected 'edge <u> <v>'", l.number, kw_col);
            edge_lines.push_back({l, {w[1], w[2]}});
        } else if (kw == "player") {
            auto [head, tail] = split_colon(l);
            auto hw = words(head);
            if (hw.size() != 3 || hw[2] != "nodes") throw ParseError("expected 'player <j> nodes:'", l.number, kw_col);
            int j = parse_index(hw[1], l);
            max_owner = std::max(max_owner, j);
            for (auto& name : words(tail)) {
                if (!ids.emplace(name, static_cast<int>(g.names.size())).second)
                    throw SpecError("node '" + name + "' has more than one owner");
                g.names.push_back(name);
                g.owner.push_back(j);
            }
        } else if (kw == "goal") {
            auto [head, tail] = split_colon(l);
            auto hw = words(head);
            if (hw.size() != 3) throw ParseError("expected 'goal <j> <k>:'", l.number, kw_col);
            int j = parse_index(hw[1], l);
            int k = parse_index(hw[2], l);
            if (!goal_lines[j].emplace(k, std::pair{l, words(tail)}).second)
                throw SpecError("goal " + std::to_string(j) + " " + std::to_string(k) + " declared twice");
        } else {
            throw ParseError("unknown declaration '" + kw + "'", l.number, kw_col);
        }
    }
    g.players = declared_players ? declared_players : static_cast<std::size_t>(max_owner) + 1;

    auto lookup = [&](const std::string& name, const Line& l) {
        auto it = ids.find(name);
        if (it == ids.end()) throw ParseError("unknown node '" + name + "'", l.number, l.text.find(name) + 1);
        return it->second;
    };
    for (auto& [l, e] : edge_lines) g.edges.insert({lookup(e.first, l), lookup(e.second, l)});
    if (!goal_lines.empty() && static_cast<std::size_t>(goal_lines.rbegin()->first) >= g.players)
        throw SpecError("goal references an unknown player");
    g.goals.resize(g.players);
    for (auto& [j, per] : goal_lines) {
        std::map<int, std::set<int>> sets;
        for (auto& [k, src] : per) {
            std::set<int> s;
            for (auto& name : src.second) s.insert(lookup(name, src.first));
            sets.emplace(k, std::move(s));
        }
        g.goals[static_cast<std::size_t>(j)] = dense_goals(sets, j);
    }
    validate(g);
    return g;
}

GameSpec parse_game_spec(std::string_view text)
{
    for (const auto& l : split_lines(text)) {
        auto kw = first_word(l.text);
        if (kw == "players") continue;
        if (kw == "player" || kw == "edge") return encode_explicit(parse_explicit_game(text));
        break;
    }
    return parse_symbolic_spec(text);
}

std::string serialize_symbolic_spec(const GameSpec& spec)
{
    std::ostringstream out;
    const auto& t = spec.table;
    out << "players " << t.players() << "\n";
    if (!t.shared().empty()) {
        out << "shared:";
        for (const auto& v : t.shared()) out << ' ' << v;
        out << "\n";
    }
    for (std::size_t j = 0; j < t.players(); ++j) {
        out << "owns " << j << ":";
        for (const auto& v : t.owned(static_cast<int>(j))) out << ' ' << v;
        out << "\n";
    }
    for (const auto& a : spec.actions) out << "action " << a.player << ": " << a.formula.to_string() << "\n";
    if (spec.domain) out << "domain: " << spec.domain->to_string() << "\n";
    for (std::size_t j = 0; j < spec.goals.size(); ++j)
        for (std::size_t k = 0; k < spec.goals[j].size(); ++k)
            out << "goal " << j << ' ' << k << ": " << spec.goals[j][k].to_string() << "\n";
    return out.str();
}

std::string serialize_explicit_game(const ExplicitGame& g)
{
    std::ostringstream out;
    out << "players " << g.players << "\n";
    for (std::size_t j = 0; j < g.players; ++j) {
        out << "player " << j << " nodes:";
        for (std::size_t u = 0; u < g.size(); ++u)
            if (g.owner[u] == static_cast<int>(j)) out << ' ' << g.names[u];
        out << "\n";
    }
    for (auto [u, v] : g.edges)
        out << "edge " << g.names[static_cast<std::size_t>(u)] << ' ' << g.names[static_cast<std::size_t>(v)] << "\n";
    for (std::size_t j = 0; j < g.goals.size(); ++j) {
        for (std::size_t k = 0; k < g.goals[j].size(); ++k) {
            out << "goal " << j << ' ' << k << ":";
            for (int u : g.goals[j][k]) out << ' ' << g.names[static_cast<std::size_t>(u)];
            out << "\n";
        }
    }
    return out.str();
}

std::string position_bit_name(unsigned b) { return "pos" + std::to_string(b); }

unsigned position_bits(std::size_t nodes)
{
    unsigned b = 1;
    while ((std::size_t{1} << b) < nodes) ++b;
    return b;
}

GameSpec encode_explicit(const ExplicitGame& g)
{
    validate(g);
    auto bits = position_bits(g.size());
    std::vector<std::string> shared;
    for (unsigned b = 0; b < bits; ++b) shared.push_back(position_bit_name(b));

    auto code = [&](int u, bool primed) {
        std::vector<Formula> lits;
        for (unsigned b = 0; b < bits; ++b) {
            auto v = Formula::variable(position_bit_name(b), primed);
            lits.push_back((u >> b) & 1 ? v : Formula::negation(v));
        }
        return Formula::conjunction(std::move(lits));
    };

    GameSpec spec;
    spec.table = VariableTable(g.players, {}, shared);
    std::vector<std::vector<Formula>> moves(g.players);
    for (auto [u, v] : g.edges)
        moves[static_cast<std::size_t>(g.owner[static_cast<std::size_t>(u)])].push_back(
            Formula::conjunction({code(u, false), code(v, true)}));
    for (std::size_t j = 0; j < g.players; ++j)
        spec.actions.push_back({static_cast<int>(j), Formula::disjunction(std::move(moves[j]))});

    std::vector<Formula> nodes;
    for (std::size_t u = 0; u < g.size(); ++u)
        nodes.push_back(Formula::conjunction(
            {code(static_cast<int>(u), false), Formula::variable("turn" + std::to_string(g.owner[u]))}));
    spec.domain = Formula::disjunction(std::move(nodes));

    spec.goals.resize(g.players);
    for (std::size_t j = 0; j < g.goals.size(); ++j) {
        for (const auto& goal : g.goals[j]) {
            std::vector<Formula> members;
            for (int u : goal) members.push_back(code(u, false));
            spec.goals[j].push_back(Formula::disjunction(std::move(members)));
        }
    }
    spec.explicit_source = g;
    return spec;
}

}  // namespace nestedgr1
