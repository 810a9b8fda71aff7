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
 * @file simulator.hpp
 * Statevector kernels for the gate pool and circuit execution.
 *
 * Rotations follow R_sigma(theta) = exp(-i theta sigma / 2).
 */
#pragma once

#include <cmath>
#include <span>
#include <utility>

#include "circuit.hpp"
#include "state.hpp"

namespace qembed {

namespace detail {

inline void check_fits(const pure_state &state, const gate &g) {
    if (g.target >= state.n_qubits() || g.control >= state.n_qubits()) {
        throw error(error_kind::invalid_circuit,
                    "gate " + g.label() + " does not fit a " +
                        std::to_string(state.n_qubits()) + "-qubit state");
    }
}

} // namespace detail

/// Applies `g` in place with an already resolved rotation angle.
inline void apply_gate_inplace(pure_state &state, const gate &g, double theta) {
    detail::check_fits(state, g);
    auto amps = state.amplitudes();
    const std::size_t n = state.n_qubits();
    const std::size_t dim = amps.size();
    const std::size_t tmask = qubit_mask(n, g.target);

    switch (g.kind) {
    case gate_kind::ry: {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tmask) != 0) continue;
            const complex_t a = amps[i], b = amps[i | tmask];
            amps[i] = c * a - s * b;
            amps[i | tmask] = s * a + c * b;
        }
        break;
    }
    case gate_kind::rx: {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        const complex_t mis{0.0, -s};
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tmask) != 0) continue;
            const complex_t a = amps[i], b = amps[i | tmask];
            amps[i] = c * a + mis * b;
            amps[i | tmask] = mis * a + c * b;
        }
        break;
    }
    case gate_kind::rz: {
        const complex_t lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
        for (std::size_t i = 0; i < dim; ++i) {
            amps[i] *= (i & tmask) != 0 ? hi : lo;
        }
        break;
    }
    case gate_kind::cnot: {
        const std::size_t cmask = qubit_mask(n, g.control);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) != 0 && (i & tmask) == 0) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
        break;
    }
    case gate_kind::cz: {
        const std::size_t cmask = qubit_mask(n, g.control);
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) != 0 && (i & tmask) != 0) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
    }
}

inline void apply_gate_inplace(pure_state &state, const gate &g,
                               std::span<const double> features,
                               std::span<const double> params) {
    const double theta = is_rotation(g.kind) ? g.angle.resolve(features, params) : 0.0;
    apply_gate_inplace(state, g, theta);
}

[[nodiscard]] inline pure_state apply_gate(pure_state state, const gate &g,
                                           std::span<const double> features,
                                           std::span<const double> params) {
    apply_gate_inplace(state, g, features, params);
    return state;
}

/// Applies every gate of `c` to `state` in order.
inline void run_inplace(pure_state &state, const circuit &c, std::span<const double> features,
                        std::span<const double> params) {
    if (state.n_qubits() != c.n_qubits()) {
        throw error(error_kind::dimension_mismatch,
                    "run: circuit has " + std::to_string(c.n_qubits()) + " qubits, state has " +
                        std::to_string(state.n_qubits()));
    }
    if (features.size() < c.feature_count() || params.size() < c.param_count()) {
        throw error(error_kind::invalid_circuit,
                    "run: circuit references " + std::to_string(c.feature_count()) +
                        " features and " + std::to_string(c.param_count()) + " params, got " +
                        std::to_string(features.size()) + " and " + std::to_string(params.size()));
    }
    for (const auto &g : c.gates()) {
        apply_gate_inplace(state, g, features, params);
    }
}

/// U(features, params)|0...0>.
[[nodiscard]] inline pure_state run(const circuit &c, std::span<const double> features = {},
                                    std::span<const double> params = {}) {
    pure_state state(c.n_qubits());
    run_inplace(state, c, features, params);
    return state;
}

} // namespace qembed
