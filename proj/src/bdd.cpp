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

#include "nestedgr1/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <unordered_set>

namespace nestedgr1 {

// ---------------------------------------------------------------------------
// Predicate

namespace {

Store& owner(const Predicate& a, const Predicate& b)
{
    if (a.store() == nullptr || a.store() != b.store()) throw StoreMismatch();
    return *a.store();
}

}  // namespace

Predicate Predicate::operator&(const Predicate& o) const { return owner(*this, o).land(*this, o); }
Predicate Predicate::operator|(const Predicate& o) const { return owner(*this, o).lor(*this, o); }
Predicate Predicate::operator^(const Predicate& o) const { return owner(*this, o).lxor(*this, o); }
Predicate Predicate::operator!() const
{
    if (store_ == nullptr) throw StoreMismatch();
    return store_->lnot(*this);
}
Predicate Predicate::implies(const Predicate& o) const { return (!*this) | o; }
Predicate Predicate::iff(const Predicate& o) const { return !(*this ^ o); }
Predicate Predicate::minus(const Predicate& o) const { return *this & !o; }
bool Predicate::subset_of(const Predicate& o) const { return minus(o).is_false(); }

// ---------------------------------------------------------------------------
// Store

Store::Store(unsigned num_vars, std::size_t node_limit) : num_vars_(num_vars), node_limit_(node_limit)
{
    nodes_.push_back({num_vars_, 0, 0});
    nodes_.push_back({num_vars_, 1, 1});
}

void Store::check(const Predicate& p) const
{
    if (p.store_ != this) throw StoreMismatch();
}

std::uint32_t Store::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi)
{
    if (lo == hi) return lo;
    Key3 key{var, lo, hi};
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    if (nodes_.size() >= node_limit_) {
        throw ResourceError("decision diagram node limit of " + std::to_string(node_limit_) + " exceeded");
    }
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({var, lo, hi});
    unique_.emplace(key, id);
    return id;
}

Predicate Store::var(unsigned v)
{
    if (v >= num_vars_) throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
    return wrap(mk(v, 0, 1));
}

Predicate Store::nvar(unsigned v)
{
    if (v >= num_vars_) throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
    return wrap(mk(v, 1, 0));
}

std::uint32_t Store::and_rec(std::uint32_t a, std::uint32_t b)
{
    if (a == 0 || b == 0) return 0;
    if (a == 1) return b;
    if (b == 1 || a == b) return a;
    if (a > b) std::swap(a, b);
    OpKey key{kAnd, a, b, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto la = level(a), lb = level(b);
    auto top = std::min(la, lb);
    auto a0 = la == top ? nodes_[a].lo : a, a1 = la == top ? nodes_[a].hi : a;
    auto b0 = lb == top ? nodes_[b].lo : b, b1 = lb == top ? nodes_[b].hi : b;
    auto lo = and_rec(a0, b0);
    auto hi = and_rec(a1, b1);
    auto r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::or_rec(std::uint32_t a, std::uint32_t b)
{
    if (a == 1 || b == 1) return 1;
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    if (a > b) std::swap(a, b);
    OpKey key{kOr, a, b, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto la = level(a), lb = level(b);
    auto top = std::min(la, lb);
    auto a0 = la == top ? nodes_[a].lo : a, a1 = la == top ? nodes_[a].hi : a;
    auto b0 = lb == top ? nodes_[b].lo : b, b1 = lb == top ? nodes_[b].hi : b;
    auto lo = or_rec(a0, b0);
    auto hi = or_rec(a1, b1);
    auto r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::xor_rec(std::uint32_t a, std::uint32_t b)
{
    if (a == b) return 0;
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == 1) return not_rec(b);
    if (b == 1) return not_rec(a);
    if (a > b) std::swap(a, b);
    OpKey key{kXor, a, b, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto la = level(a), lb = level(b);
    auto top = std::min(la, lb);
    auto a0 = la == top ? nodes_[a].lo : a, a1 = la == top ? nodes_[a].hi : a;
    auto b0 = lb == top ? nodes_[b].lo : b, b1 = lb == top ? nodes_[b].hi : b;
    auto lo = xor_rec(a0, b0);
    auto hi = xor_rec(a1, b1);
    auto r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::not_rec(std::uint32_t a)
{
    if (a <= 1) return 1 - a;
    OpKey key{kNot, a, 0, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto lo = not_rec(nodes_[a].lo);
    auto hi = not_rec(nodes_[a].hi);
    auto r = mk(level(a), lo, hi);
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::ite_rec(std::uint32_t c, std::uint32_t t, std::uint32_t e)
{
    if (c == 1) return t;
    if (c == 0) return e;
    if (t == e) return t;
    if (t == 1 && e == 0) return c;
    if (t == 0 && e == 1) return not_rec(c);
    if (t == 1) return or_rec(c, e);
    if (e == 0) return and_rec(c, t);
    OpKey key{kIte, c, t, e};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto top = std::min({level(c), level(t), level(e)});
    auto split = [&](std::uint32_t x, bool high) {
        if (level(x) != top) return x;
        return high ? nodes_[x].hi : nodes_[x].lo;
    };
    auto lo = ite_rec(split(c, false), split(t, false), split(e, false));
    auto hi = ite_rec(split(c, true), split(t, true), split(e, true));
    auto r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::exists_rec(std::uint32_t f, std::uint32_t cube)
{
    if (f <= 1 || cube == 1) return f;
    while (cube != 1 && level(cube) < level(f)) cube = nodes_[cube].hi;
    if (cube == 1) return f;
    OpKey key{kExists, f, cube, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::uint32_t r;
    if (level(cube) == level(f)) {
        auto lo = exists_rec(nodes_[f].lo, nodes_[cube].hi);
        if (lo == 1) {
            r = 1;
        } else {
            auto hi = exists_rec(nodes_[f].hi, nodes_[cube].hi);
            r = or_rec(lo, hi);
        }
    } else {
        auto lo = exists_rec(nodes_[f].lo, cube);
        auto hi = exists_rec(nodes_[f].hi, cube);
        r = mk(level(f), lo, hi);
    }
    cache_.emplace(key, r);
    return r;
}

std::uint32_t Store::and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube)
{
    if (f == 0 || g == 0) return 0;
    if (f == 1 && g == 1) return 1;
    if (f == 1) return exists_rec(g, cube);
    if (g == 1 || f == g) return exists_rec(f, cube);
    if (cube == 1) return and_rec(f, g);
    if (f > g) std::swap(f, g);
    auto top = std::min(level(f), level(g));
    while (cube != 1 && level(cube) < top) cube = nodes_[cube].hi;
    if (cube == 1) return and_rec(f, g);
    OpKey key{kAndExists, f, g, cube};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto f0 = level(f) == top ? nodes_[f].lo : f, f1 = level(f) == top ? nodes_[f].hi : f;
    auto g0 = level(g) == top ? nodes_[g].lo : g, g1 = level(g) == top ? nodes_[g].hi : g;
    std::uint32_t r;
    if (level(cube) == top) {
        auto next = nodes_[cube].hi;
        auto lo = and_exists_rec(f0, g0, next);
        r = lo == 1 ? 1 : or_rec(lo, and_exists_rec(f1, g1, next));
    } else {
        auto lo = and_exists_rec(f0, g0, cube);
        auto hi = and_exists_rec(f1, g1, cube);
        r = mk(top, lo, hi);
    }
    cache_.emplace(key, r);
    return r;
}

Predicate Store::land(const Predicate& a, const Predicate& b)
{
    check(a);
    check(b);
    return wrap(and_rec(a.id_, b.id_));
}

Predicate Store::lor(const Predicate& a, const Predicate& b)
{
    check(a);
    check(b);
    return wrap(or_rec(a.id_, b.id_));
}

Predicate Store::lxor(const Predicate& a, const Predicate& b)
{
    check(a);
    check(b);
    return wrap(xor_rec(a.id_, b.id_));
}

Predicate Store::lnot(const Predicate& a)
{
    check(a);
    return wrap(not_rec(a.id_));
}

Predicate Store::ite(const Predicate& c, const Predicate& t, const Predicate& e)
{
    check(c);
    check(t);
    check(e);
    return wrap(ite_rec(c.id_, t.id_, e.id_));
}

Predicate Store::cube(std::span<const unsigned> vars)
{
    std::vector<unsigned> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::uint32_t r = 1;
    for (auto v : sorted) {
        if (v >= num_vars_) throw std::out_of_range("variable index out of range");
        r = mk(v, 0, r);
    }
    return wrap(r);
}

Predicate Store::minterm(std::span<const unsigned> vars, const std::vector<bool>& values)
{
    if (vars.size() != values.size()) throw std::invalid_argument("minterm: size mismatch");
    Predicate r = top();
    for (std::size_t k = 0; k < vars.size(); ++k) r &= values[k] ? var(vars[k]) : nvar(vars[k]);
    return r;
}

Predicate Store::exists(const Predicate& vars_cube, const Predicate& f)
{
    check(vars_cube);
    check(f);
    return wrap(exists_rec(f.id_, vars_cube.id_));
}

Predicate Store::forall(const Predicate& vars_cube, const Predicate& f)
{
    check(vars_cube);
    check(f);
    return wrap(not_rec(exists_rec(not_rec(f.id_), vars_cube.id_)));
}

Predicate Store::and_exists(const Predicate& vars_cube, const Predicate& f, const Predicate& g)
{
    check(vars_cube);
    check(f);
    check(g);
    return wrap(and_exists_rec(f.id_, g.id_, vars_cube.id_));
}

RenameMap Store::make_rename(const std::vector<std::pair<unsigned, unsigned>>& mapping)
{
    std::vector<std::int32_t> table(num_vars_, -1);
    std::set<unsigned> targets;
    for (auto [from, to] : mapping) {
        if (from >= num_vars_ || to >= num_vars_) throw std::out_of_range("rename: variable index out of range");
        if (table[from] != -1) throw std::invalid_argument("rename: variable mapped twice");
        if (!targets.insert(to).second) throw std::invalid_argument("rename: two variables mapped to one target");
        table[from] = static_cast<std::int32_t>(to);
    }
    renames_.push_back(std::move(table));
    return RenameMap{renames_.size() - 1};
}

std::uint32_t Store::rename_rec(std::uint32_t f, std::size_t map)
{
    if (f <= 1) return f;
    OpKey key{kRename, f, static_cast<std::uint32_t>(map), 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto lo = rename_rec(nodes_[f].lo, map);
    auto hi = rename_rec(nodes_[f].hi, map);
    auto v = level(f);
    auto target = renames_[map][v] >= 0 ? static_cast<std::uint32_t>(renames_[map][v]) : v;
    auto r = ite_rec(mk(target, 0, 1), hi, lo);
    cache_.emplace(key, r);
    return r;
}

Predicate Store::rename(const Predicate& f, const RenameMap& map)
{
    check(f);
    if (map.handle >= renames_.size()) throw std::invalid_argument("rename: unknown map");
    const auto& table = renames_[map.handle];
    std::vector<bool> is_source(num_vars_, false);
    for (unsigned v = 0; v < num_vars_; ++v)
        if (table[v] >= 0) is_source[v] = true;
    auto supp = support(f);
    for (unsigned v = 0; v < num_vars_; ++v) {
        if (table[v] < 0) continue;
        auto t = static_cast<unsigned>(table[v]);
        if (is_source[t]) continue;
        // A target outside the source set would be captured if f depends on it.
        if (std::binary_search(supp.begin(), supp.end(), t)) {
            throw std::invalid_argument("rename: target variable " + std::to_string(t) +
                                        " occurs free in the operand");
        }
    }
    return wrap(rename_rec(f.id_, map.handle));
}

std::uint32_t Store::restrict_rec(std::uint32_t f, std::uint32_t lits)
{
    if (f <= 1 || lits == 1) return f;
    while (lits != 1 && level(lits) < level(f)) lits = nodes_[lits].lo == 0 ? nodes_[lits].hi : nodes_[lits].lo;
    if (lits == 1) return f;
    OpKey key{kRestrict, f, lits, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::uint32_t r;
    if (level(lits) == level(f)) {
        bool positive = nodes_[lits].lo == 0;
        auto next = positive ? nodes_[lits].hi : nodes_[lits].lo;
        r = restrict_rec(positive ? nodes_[f].hi : nodes_[f].lo, next);
    } else {
        auto lo = restrict_rec(nodes_[f].lo, lits);
        auto hi = restrict_rec(nodes_[f].hi, lits);
        r = mk(level(f), lo, hi);
    }
    cache_.emplace(key, r);
    return r;
}

Predicate Store::restrict(const Predicate& f, std::span<const unsigned> vars, const std::vector<bool>& values)
{
    check(f);
    auto lits = minterm(vars, values);
    return wrap(restrict_rec(f.id_, lits.id_));
}

bool Store::eval(const Predicate& f, const std::vector<bool>& assignment) const
{
    check(f);
    auto id = f.id_;
    while (id > 1) {
        auto v = level(id);
        bool b = v < assignment.size() && assignment[v];
        id = b ? nodes_[id].hi : nodes_[id].lo;
    }
    return id == 1;
}

std::vector<unsigned> Store::support(const Predicate& f) const
{
    check(f);
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<bool> vars(num_vars_, false);
    std::vector<std::uint32_t> stack{f.id_};
    while (!stack.empty()) {
        auto id = stack.back();
        stack.pop_back();
        if (id <= 1 || seen[id]) continue;
        seen[id] = true;
        vars[level(id)] = true;
        stack.push_back(nodes_[id].lo);
        stack.push_back(nodes_[id].hi);
    }
    std::vector<unsigned> out;
    for (unsigned v = 0; v < num_vars_; ++v)
        if (vars[v]) out.push_back(v);
    return out;
}

double Store::sat_count(const Predicate& f, std::span<const unsigned> vars_in) const
{
    check(f);
    std::vector<unsigned> vars(vars_in.begin(), vars_in.end());
    std::sort(vars.begin(), vars.end());
    auto pos = [&](std::uint32_t id) -> std::size_t {
        if (id <= 1) return vars.size();
        auto it = std::lower_bound(vars.begin(), vars.end(), level(id));
        if (it == vars.end() || *it != level(id)) {
            throw std::invalid_argument("sat_count: predicate depends on a variable outside the counted set");
        }
        return static_cast<std::size_t>(it - vars.begin());
    };
    std::unordered_map<std::uint32_t, double> memo;
    std::function<double(std::uint32_t)> rec = [&](std::uint32_t id) -> double {
        if (id == 0) return 0.0;
        if (id == 1) return 1.0;
        if (auto it = memo.find(id); it != memo.end()) return it->second;
        auto p = pos(id);
        auto lo = nodes_[id].lo, hi = nodes_[id].hi;
        double r = rec(lo) * std::ldexp(1.0, static_cast<int>(pos(lo) - p - 1)) +
                   rec(hi) * std::ldexp(1.0, static_cast<int>(pos(hi) - p - 1));
        memo.emplace(id, r);
        return r;
    };
    return rec(f.id_) * std::ldexp(1.0, static_cast<int>(pos(f.id_)));
}

void Store::for_each_sat(const Predicate& f, std::span<const unsigned> vars_in,
                         const std::function<void(const std::vector<bool>&)>& visit) const
{
    check(f);
    std::vector<unsigned> vars(vars_in.begin(), vars_in.end());
    if (!std::is_sorted(vars.begin(), vars.end())) throw std::invalid_argument("for_each_sat: vars must be sorted");
    std::vector<bool> values(vars.size(), false);
    std::function<void(std::uint32_t, std::size_t)> rec = [&](std::uint32_t id, std::size_t k) {
        if (id == 0) return;
        if (k == vars.size()) {
            if (id != 1) throw std::invalid_argument("for_each_sat: predicate depends on uncounted variables");
            visit(values);
            return;
        }
        if (id > 1 && level(id) < vars[k]) {
            throw std::invalid_argument("for_each_sat: predicate depends on uncounted variables");
        }
        bool decides = id > 1 && level(id) == vars[k];
        values[k] = false;
        rec(decides ? nodes_[id].lo : id, k + 1);
        values[k] = true;
        rec(decides ? nodes_[id].hi : id, k + 1);
        values[k] = false;
    };
    rec(f.id_, 0);
}

std::size_t Store::dag_size(const Predicate& f) const
{
    check(f);
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{f.id_};
    while (!stack.empty()) {
        auto id = stack.back();
        stack.pop_back();
        if (!seen.insert(id).second || id <= 1) continue;
        stack.push_back(nodes_[id].lo);
        stack.push_back(nodes_[id].hi);
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Fixpoints

const Predicate& FixpointEnvironment::operator[](const std::string& name) const
{
    auto it = values_.find(name);
    if (it == values_.end()) throw std::out_of_range("fixpoint variable '" + name + "' is unbound");
    return it->second;
}

Predicate FixpointEnvironment::iterate(const std::string& var, Predicate start, const Body& body,
                                       std::vector<Predicate>* trace)
{
    auto saved = values_.find(var) != values_.end() ? std::optional<Predicate>(values_[var]) : std::nullopt;
    Predicate current = start;
    if (trace) trace->push_back(current);
    for (std::size_t k = 0;; ++k) {
        if (k >= iteration_limit_) {
            throw ResourceError("fixpoint over '" + var + "' did not converge within " +
                                std::to_string(iteration_limit_) + " iterations");
        }
        values_[var] = current;
        Predicate next = body(*this);
        if (next == current) break;
        current = next;
        if (trace) trace->push_back(current);
    }
    if (saved) {
        values_[var] = *saved;
    } else {
        values_.erase(var);
    }
    return current;
}

Predicate FixpointEnvironment::mu(const std::string& var, const Body& body, std::vector<Predicate>* trace)
{
    return iterate(var, store_->bottom(), body, trace);
}

Predicate FixpointEnvironment::nu(const std::string& var, const Body& body, std::vector<Predicate>* trace)
{
    return iterate(var, store_->top(), body, trace);
}

Predicate least_fixpoint(Store& store, const std::function<Predicate(const Predicate&)>& body,
                         std::vector<Predicate>* trace, std::size_t iteration_limit)
{
    FixpointEnvironment env(store, iteration_limit);
    return env.mu("X", [&](FixpointEnvironment& e) { return body(e["X"]); }, trace);
}

Predicate greatest_fixpoint(Store& store, const std::function<Predicate(const Predicate&)>& body,
                            std::vector<Predicate>* trace, std::size_t iteration_limit)
{
    FixpointEnvironment env(store, iteration_limit);
    return env.nu("X", [&](FixpointEnvironment& e) { return body(e["X"]); }, trace);
}

}  // namespace nestedgr1
