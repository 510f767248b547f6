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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nestedgr1 {

enum class ExitCode : int { ok = 0, diagnostic = 1, usage = 2 };

struct RunConfig {
    std::string subcommand;  // coop, contract, oracle, ops, simulate, dot
    std::string input;
    std::string schedule = "grouped";
    bool trace = false;
    bool stats = false;
    std::string check;  // oracle: nonexistence-recurrence, nonexistence-safety, mutual, coop
    std::optional<int> player;
    std::vector<int> goals;                // goal indices; empty means all
    std::vector<std::string> assumption;   // node names for oracle --check mutual
    std::string op;                        // ops: pre, pre_star, cpre, attr, trap
    std::vector<std::string> nodes;        // ops operand
    std::vector<std::string> exit_nodes;   // ops trap exit set
    std::size_t node_limit = std::size_t{1} << 24;
    std::size_t expansion_limit = std::size_t{1} << 20;
    std::size_t steps = 100;
    std::string policy = "cooperative";
    std::uint64_t seed = 1;
    std::string start;
    std::string format = "text";  // text, json, dot
};

/// Applies NESTEDGR1_NODE_LIMIT and NESTEDGR1_EXPANSION_LIMIT if set.
void apply_environment(RunConfig& config);

/// Runs one subcommand. Errors are reported as one line on `err`.
ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nestedgr1
