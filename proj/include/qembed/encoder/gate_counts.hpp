// Copyright 2026 The qembed Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file gate_counts.hpp
 * Rotation merging and gate-count accounting.
 */
#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "../qsim/circuit.hpp"

namespace qembed {

/**
 * @brief Collapses runs of same-axis rotations on one qubit.
 *
 * Two rotations merge when they share kind and qubit and no gate touching
 * that qubit sits between them. The merged angle is the sum of the two
 * angle expressions.
 */
[[nodiscard]] inline circuit merge_consecutive_rotations(const circuit &in) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<gate> out;
    out.reserve(in.size());
    // Index in `out` of the most recent gate touching each qubit.
    std::vector<std::size_t> last(in.n_qubits(), none);
    for (const auto &g : in.gates()) {
        if (is_rotation(g.kind)) {
            const std::size_t prev = last[g.target];
            if (prev != none && out[prev].kind == g.kind) {
                out[prev].angle.accumulate(g.angle);
                continue;
            }
            last[g.target] = out.size();
        } else {
            last[g.control] = last[g.target] = out.size();
        }
        out.push_back(g);
    }
    circuit merged(in.n_qubits());
    for (auto &g : out) merged.add(std::move(g));
    return merged;
}

struct gate_counts {
    std::size_t cnot = 0;
    std::size_t cz = 0;
    std::size_t rotations = 0;
    std::size_t depth = 0;

    friend bool operator==(const gate_counts &, const gate_counts &) = default;
};

/// Counts after merge_consecutive_rotations; depth is the longest chain of
/// gates that pairwise share a qubit.
[[nodiscard]] inline gate_counts count_gates(const circuit &c) {
    const circuit merged = merge_consecutive_rotations(c);
    gate_counts counts;
    std::vector<std::size_t> level(c.n_qubits(), 0);
    for (const auto &g : merged.gates()) {
        switch (g.kind) {
        case gate_kind::cnot:
            ++counts.cnot;
            break;
        case gate_kind::cz:
            ++counts.cz;
            break;
        default:
            ++counts.rotations;
        }
        const std::size_t d = std::max(level[g.control], level[g.target]) + 1;
        level[g.control] = level[g.target] = d;
        counts.depth = std::max(counts.depth, d);
    }
    return counts;
}

} // namespace qembed
