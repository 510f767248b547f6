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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nestedgr1 {

/// Raised when operands come from different stores.
class StoreMismatch : public std::logic_error {
public:
    StoreMismatch() : std::logic_error("predicates belong to different stores") {}
};

/// Raised when a store exceeds its node ceiling or a fixpoint its iteration ceiling.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Store;

/**
 * Handle to a canonical reduced ordered decision diagram node.
 *
 * Two predicates from the same store denote the same Boolean function
 * iff their handles compare equal.
 */
class Predicate {
public:
    Predicate() = default;

    Store* store() const { return store_; }
    std::uint32_t id() const { return id_; }
    bool valid() const { return store_ != nullptr; }

    bool is_false() const { return id_ == 0; }
    bool is_true() const { return id_ == 1; }

    Predicate operator&(const Predicate& o) const;
    Predicate operator|(const Predicate& o) const;
    Predicate operator^(const Predicate& o) const;
    Predicate operator!() const;
    Predicate& operator&=(const Predicate& o) { return *this = *this & o; }
    Predicate& operator|=(const Predicate& o) { return *this = *this | o; }

    Predicate implies(const Predicate& o) const;
    Predicate iff(const Predicate& o) const;
    /// Set difference: this & !o.
    Predicate minus(const Predicate& o) const;
    /// True iff every assignment of this satisfies o.
    bool subset_of(const Predicate& o) const;

    bool operator==(const Predicate& o) const { return store_ == o.store_ && id_ == o.id_; }
    bool operator!=(const Predicate& o) const { return !(*this == o); }

private:
    friend class Store;
    Predicate(Store* s, std::uint32_t id) : store_(s), id_(id) {}

    Store* store_ = nullptr;
    std::uint32_t id_ = 0;
};

/// Bijective variable substitution registered with a store.
struct RenameMap {
    std::size_t handle = 0;
};

/**
 * Hash-consed node store. Variable order is the variable index and is
 * fixed for the lifetime of the store. Single-threaded.
 */
class Store {
public:
    static constexpr std::size_t default_node_limit = std::size_t{1} << 24;

    explicit Store(unsigned num_vars, std::size_t node_limit = default_node_limit);

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    unsigned num_vars() const { return num_vars_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t node_limit() const { return node_limit_; }

    Predicate top() { return {this, 1}; }
    Predicate bottom() { return {this, 0}; }
    Predicate var(unsigned v);
    Predicate nvar(unsigned v);
    Predicate constant(bool b) { return b ? top() : bottom(); }

    Predicate land(const Predicate& a, const Predicate& b);
    Predicate lor(const Predicate& a, const Predicate& b);
    Predicate lxor(const Predicate& a, const Predicate& b);
    Predicate lnot(const Predicate& a);
    Predicate ite(const Predicate& c, const Predicate& t, const Predicate& e);

    /// Positive cube over the given variables.
    Predicate cube(std::span<const unsigned> vars);
    /// Conjunction of literals; values[k] fixes vars[k].
    Predicate minterm(std::span<const unsigned> vars, const std::vector<bool>& values);

    Predicate exists(const Predicate& vars_cube, const Predicate& f);
    Predicate forall(const Predicate& vars_cube, const Predicate& f);
    /// exists vars. (f & g) without building the conjunction.
    Predicate and_exists(const Predicate& vars_cube, const Predicate& f, const Predicate& g);

    /// Registers a simultaneous substitution. `mapping` is a list of (from, to)
    /// pairs that must form a bijection between its source and target sets;
    /// a variable outside both sets must not be a target.
    RenameMap make_rename(const std::vector<std::pair<unsigned, unsigned>>& mapping);
    Predicate rename(const Predicate& f, const RenameMap& map);

    /// Cofactor with respect to a partial assignment.
    Predicate restrict(const Predicate& f, std::span<const unsigned> vars, const std::vector<bool>& values);

    bool eval(const Predicate& f, const std::vector<bool>& assignment) const;
    std::vector<unsigned> support(const Predicate& f) const;

    /// Number of assignments over `vars` satisfying f. The support of f must be
    /// contained in `vars`.
    double sat_count(const Predicate& f, std::span<const unsigned> vars) const;

    /// Calls `visit` for every satisfying assignment over `vars` (values aligned
    /// with `vars`), in lexicographic order with vars[0] most significant and
    /// false before true.
    void for_each_sat(const Predicate& f, std::span<const unsigned> vars,
                      const std::function<void(const std::vector<bool>&)>& visit) const;

    std::size_t dag_size(const Predicate& f) const;

private:
    struct Node {
        std::uint32_t var;
        std::uint32_t lo;
        std::uint32_t hi;
    };

    struct Key3 {
        std::uint32_t a, b, c;
        bool operator==(const Key3& o) const { return a == o.a && b == o.b && c == o.c; }
    };
    struct Key3Hash {
        std::size_t operator()(const Key3& k) const
        {
            std::uint64_t h = k.a;
            h = h * 0x9e3779b97f4a7c15ULL ^ k.b;
            h = h * 0x9e3779b97f4a7c15ULL ^ k.c;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    struct OpKey {
        std::uint32_t op, a, b, c;
        bool operator==(const OpKey& o) const { return op == o.op && a == o.a && b == o.b && c == o.c; }
    };
    struct OpKeyHash {
        std::size_t operator()(const OpKey& k) const
        {
            std::uint64_t h = k.op;
            h = h * 0x9e3779b97f4a7c15ULL ^ k.a;
            h = h * 0x9e3779b97f4a7c15ULL ^ k.b;
            h = h * 0x9e3779b97f4a7c15ULL ^ k.c;
            return static_cast<std::size_t>(h ^ (h >> 31));
        }
    };

    enum Op : std::uint32_t { kAnd = 1, kOr, kXor, kNot, kIte, kExists, kForall, kAndExists, kRename, kRestrict };

    std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
    std::uint32_t level(std::uint32_t id) const { return nodes_[id].var; }
    void check(const Predicate& p) const;
    Predicate wrap(std::uint32_t id) { return {this, id}; }

    std::uint32_t and_rec(std::uint32_t a, std::uint32_t b);
    std::uint32_t or_rec(std::uint32_t a, std::uint32_t b);
    std::uint32_t xor_rec(std::uint32_t a, std::uint32_t b);
    std::uint32_t not_rec(std::uint32_t a);
    std::uint32_t ite_rec(std::uint32_t c, std::uint32_t t, std::uint32_t e);
    std::uint32_t exists_rec(std::uint32_t f, std::uint32_t cube);
    std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube);
    std::uint32_t rename_rec(std::uint32_t f, std::size_t map);
    std::uint32_t restrict_rec(std::uint32_t f, std::uint32_t lits);

    unsigned num_vars_;
    std::size_t node_limit_;
    std::vector<Node> nodes_;
    std::unordered_map<Key3, std::uint32_t, Key3Hash> unique_;
    std::unordered_map<OpKey, std::uint32_t, OpKeyHash> cache_;
    std::vector<std::vector<std::int32_t>> renames_;
};

/**
 * Named fixpoint variables and their current iterates.
 */
class FixpointEnvironment {
public:
    using Body = std::function<Predicate(FixpointEnvironment&)>;

    static constexpr std::size_t default_iteration_limit = 1'000'000;

    explicit FixpointEnvironment(Store& store, std::size_t iteration_limit = default_iteration_limit)
        : store_(&store), iteration_limit_(iteration_limit)
    {
    }

    /// Current iterate of a bound variable. Throws std::out_of_range if unbound.
    const Predicate& operator[](const std::string& name) const;
    bool bound(const std::string& name) const { return values_.count(name) != 0; }
    void bind(const std::string& name, Predicate value) { values_[name] = value; }

    /// Least fixpoint, iterating from false. If `trace` is given, every iterate
    /// (starting with the initial one) is appended to it.
    Predicate mu(const std::string& var, const Body& body, std::vector<Predicate>* trace = nullptr);
    /// Greatest fixpoint, iterating from true.
    Predicate nu(const std::string& var, const Body& body, std::vector<Predicate>* trace = nullptr);

    std::size_t iteration_limit() const { return iteration_limit_; }

private:
    Predicate iterate(const std::string& var, Predicate start, const Body& body, std::vector<Predicate>* trace);

    Store* store_;
    std::size_t iteration_limit_;
    std::map<std::string, Predicate> values_;
};

/// Least fixpoint of a unary body, for callers that do not need names.
Predicate least_fixpoint(Store& store, const std::function<Predicate(const Predicate&)>& body,
                         std::vector<Predicate>* trace = nullptr,
                         std::size_t iteration_limit = FixpointEnvironment::default_iteration_limit);
Predicate greatest_fixpoint(Store& store, const std::function<Predicate(const Predicate&)>& body,
                            std::vector<Predicate>* trace = nullptr,
                            std::size_t iteration_limit = FixpointEnvironment::default_iteration_limit);

}  // namespace nestedgr1
