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

#include "nestedgr1/fixpoint_ops.hpp"

#include <stdexcept>

namespace nestedgr1 {

namespace {

void require_node(const GameStructure& g, const Predicate& f)
{
    if (f.store() != g.store.get()) throw StoreMismatch();
    if (!g.is_node_predicate(f)) throw std::invalid_argument("expected a node predicate, got primed variables");
}

// exists x'. T & F'
Predicate image_pre(const GameStructure& g, const Predicate& f)
{
    return g.store->and_exists(g.primed_cube, g.transition, g.prime(f));
}

Predicate coalition_turn(const GameStructure& g, PlayerSet coalition)
{
    auto acc = g.store->bottom();
    for (std::size_t j = 0; j < g.players(); ++j)
        if (contains_player(coalition, static_cast<int>(j))) acc |= g.turn[j];
    return acc;
}

}  // namespace

Predicate pre(const GameStructure& g, const Predicate& f, OpCounters* counters)
{
    require_node(g, f);
    if (counters) ++counters->pre;
    return g.sigma & image_pre(g, f);
}

Predicate pre(const GameStructure& g, int j, const Predicate& f, OpCounters* counters)
{
    return g.turn.at(static_cast<std::size_t>(j)) & pre(g, f, counters);
}

Predicate pre_star(const GameStructure& g, const Predicate& f, OpCounters* counters)
{
    require_node(g, f);
    auto base = f & g.sigma;
    return least_fixpoint(*g.store, [&](const Predicate& x) { return base | pre(g, x, counters); });
}

Predicate cpre(const GameStructure& g, PlayerSet coalition, const Predicate& f, OpCounters* counters)
{
    require_node(g, f);
    if (counters) ++counters->cpre;
    auto mine = coalition_turn(g, coalition);
    auto can_enter = image_pre(g, f);
    auto can_leave = image_pre(g, !f);
    return g.sigma & ((mine & can_enter) | ((!mine) & (!can_leave)));
}

Predicate attr(const GameStructure& g, PlayerSet coalition, const Predicate& f, std::vector<Predicate>* rings,
               OpCounters* counters)
{
    require_node(g, f);
    auto base = f & g.sigma;
    std::vector<Predicate> trace;
    auto result = least_fixpoint(
        *g.store, [&](const Predicate& x) { return base | cpre(g, coalition, x, counters); },
        rings ? &trace : nullptr);
    if (rings) rings->assign(trace.begin() + 1, trace.end());
    return result;
}

Predicate trap(const GameStructure& g, PlayerSet coalition, const Predicate& s, const Predicate& e,
               OpCounters* counters)
{
    require_node(g, s);
    require_node(g, e);
    auto exit = e & g.sigma;
    return greatest_fixpoint(*g.store,
                             [&](const Predicate& x) { return exit | (cpre(g, coalition, x, counters) & s); });
}

}  // namespace nestedgr1
