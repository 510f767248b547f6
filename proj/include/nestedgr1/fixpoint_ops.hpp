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

#include "nestedgr1/game.hpp"

#include <cstddef>
#include <vector>

namespace nestedgr1 {

/// Call counters, for complexity instrumentation.
struct OpCounters {
    std::size_t pre = 0;
    std::size_t cpre = 0;
};

/// Nodes with a successor in F.
Predicate pre(const GameStructure& g, const Predicate& f, OpCounters* counters = nullptr);
/// Nodes of player j with a successor in F.
Predicate pre(const GameStructure& g, int j, const Predicate& f, OpCounters* counters = nullptr);
/// Nodes from which F is reachable, F included.
Predicate pre_star(const GameStructure& g, const Predicate& f, OpCounters* counters = nullptr);

/// Controllable predecessors for a coalition: on a coalition turn some move
/// enters F, on any other turn every move does. A node without moves on an
/// opponent turn is included.
Predicate cpre(const GameStructure& g, PlayerSet coalition, const Predicate& f, OpCounters* counters = nullptr);
inline Predicate cpre(const GameStructure& g, int j, const Predicate& f, OpCounters* counters = nullptr)
{
    return cpre(g, single_player(j), f, counters);
}

/// Attractor, mu X. F | CPre(X). If `rings` is given, it receives the
/// nonempty iterates; rings[0] is F plus the deadlocked opponent nodes.
Predicate attr(const GameStructure& g, PlayerSet coalition, const Predicate& f,
               std::vector<Predicate>* rings = nullptr, OpCounters* counters = nullptr);
inline Predicate attr(const GameStructure& g, int j, const Predicate& f, std::vector<Predicate>* rings = nullptr,
                      OpCounters* counters = nullptr)
{
    return attr(g, single_player(j), f, rings, counters);
}

/// Controlled-escape set, nu X. E | (CPre(X) & S).
Predicate trap(const GameStructure& g, PlayerSet coalition, const Predicate& s, const Predicate& e,
               OpCounters* counters = nullptr);
inline Predicate trap(const GameStructure& g, int j, const Predicate& s, const Predicate& e,
                      OpCounters* counters = nullptr)
{
    return trap(g, single_player(j), s, e, counters);
}

/// Players outside the coalition.
inline PlayerSet opponents(const GameStructure& g, PlayerSet coalition)
{
    return all_players(g.players()) & ~coalition;
}

}  // namespace nestedgr1
