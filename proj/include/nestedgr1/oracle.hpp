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

#include "nestedgr1/spec.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace nestedgr1 {

using NodeSet = std::set<int>;
using EdgeSet = std::set<std::pair<int, int>>;

/// Explicit game with adjacency lists in both directions.
class OracleGame {
public:
    explicit OracleGame(ExplicitGame g);

    const ExplicitGame& game() const { return game_; }
    std::size_t size() const { return game_.size(); }
    int owner(int u) const { return game_.owner[static_cast<std::size_t>(u)]; }
    const std::vector<int>& successors(int u) const { return succ_[static_cast<std::size_t>(u)]; }
    const std::vector<int>& predecessors(int u) const { return pred_[static_cast<std::size_t>(u)]; }
    NodeSet all() const;

    /// Same nodes and goals with only the given edges.
    OracleGame with_edges(const EdgeSet& edges) const;

private:
    ExplicitGame game_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
};

/// Set-based reference implementations of the symbolic operators.
namespace explicit_ops {

NodeSet pre(const OracleGame& g, const NodeSet& f);
NodeSet pre(const OracleGame& g, int j, const NodeSet& f);
NodeSet pre_star(const OracleGame& g, const NodeSet& f);
NodeSet cpre(const OracleGame& g, PlayerSet coalition, const NodeSet& f);
NodeSet attr(const OracleGame& g, PlayerSet coalition, const NodeSet& f);
NodeSet trap(const OracleGame& g, PlayerSet coalition, const NodeSet& s, const NodeSet& e);

}  // namespace explicit_ops

/// Nodes with a path to a cycle meeting every goal of every player, by SCC
/// decomposition. goals[j] empty means no constraint for player j.
NodeSet coop_explicit(const OracleGame& g, const std::vector<std::vector<NodeSet>>& goals);
NodeSet coop_explicit(const OracleGame& g);

/**
 * GR(1) query in strict-implication form for the coalition `system`:
 * if the others keep to their edges and visit every assumption set
 * infinitely often, the system keeps to its edges and visits every guarantee
 * set infinitely often. A player without a move has broken its relation.
 */
struct RealizabilityQuery {
    enum class Quantifier { realizable, cooperative };

    PlayerSet system = 1;
    std::vector<NodeSet> assumptions;
    std::vector<NodeSet> guarantees;
    Quantifier quantifier = Quantifier::realizable;
    /// Nodes the query must hold from; used by holds().
    NodeSet from_nodes;
};

/// Winning nodes of the system, by the generalized Streett(1) triple fixpoint
///   nu Z. AND_r mu Y. OR_k nu X. (G_r & CPre(Z)) | CPre(Y) | (!A_k & CPre(X)).
/// Empty assumption or guarantee lists stand for the single set of all nodes.
/// For the cooperative quantifier, the nodes from which some play satisfies
/// every guarantee.
NodeSet gr1_realizable(const OracleGame& g, const RealizabilityQuery& q);

/// Same winning set by enumerating system strategies whose memory is the
/// guarantee counter. Throws ResourceError above `strategy_limit` strategies.
NodeSet gr1_realizable_bruteforce(const OracleGame& g, const RealizabilityQuery& q,
                                  std::size_t strategy_limit = std::size_t{1} << 20);

/// True iff q.from_nodes is contained in the winning set.
bool holds(const OracleGame& g, const RealizabilityQuery& q);

/// Every P (in increasing bitmask order) such that the other players
/// realize the recurrence of P with no liveness assumption, and player j
/// realizes `goals` assuming the recurrence of P, both from every node of
/// `from`. Without `from`, the cooperative winning set of `goals` is used.
std::vector<NodeSet> search_node_assumptions(const OracleGame& g, const std::vector<NodeSet>& goals, int j,
                                             const std::optional<NodeSet>& from = std::nullopt);

/// Every proper subset of the edges leaving nodes of `player` for which the
/// goals of the game remain cooperatively satisfiable, in increasing bitmask
/// order over the sorted edge list.
std::vector<EdgeSet> search_safety_restrictions(const OracleGame& g, int player);

inline constexpr std::size_t max_assumption_search_nodes = 24;
inline constexpr std::size_t max_restriction_search_edges = 20;

}  // namespace nestedgr1
