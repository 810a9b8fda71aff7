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
 * @file vqc.hpp
 * Variational classifier: layers of Ry rotations followed by a ring of
 * CNOTs, read out as P(|1>) on one qubit.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "../encoder/embedding.hpp"
#include "../qsim/distance.hpp"
#include "../qsim/simulator.hpp"

namespace qembed {

/// Per layer l: Ry(theta[l*n + q]) on every qubit q, then CNOT(q, q+1) for
/// q < n-1 and CNOT(n-1, 0).
[[nodiscard]] inline circuit vqc_circuit(std::size_t n_qubits, std::size_t n_layers) {
    if (n_qubits < 2) {
        throw error(error_kind::invalid_argument, "vqc_circuit: needs at least 2 qubits");
    }
    if (n_layers < 1) {
        throw error(error_kind::invalid_argument, "vqc_circuit: needs at least 1 layer");
    }
    circuit c(n_qubits);
    for (std::size_t l = 0; l < n_layers; ++l) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            c.add(gate::ry(q, angle_source::param(l * n_qubits + q)));
        }
        for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
            c.add(gate::cnot(q, q + 1));
        }
        c.add(gate::cnot(n_qubits - 1, 0));
    }
    return c;
}

struct vqc_model {
    std::size_t n_qubits = 0;
    std::size_t n_layers = 0;
    std::vector<double> theta;
    std::size_t readout_qubit = 0;

    /// All-zero parameters, readout on the last qubit.
    static vqc_model zeros(std::size_t n_qubits, std::size_t n_layers) {
        return {n_qubits, n_layers, std::vector<double>(n_qubits * n_layers, 0.0), n_qubits - 1};
    }

    void validate() const {
        if (theta.size() != n_qubits * n_layers) {
            throw error(error_kind::config, "vqc_model: theta has " + std::to_string(theta.size()) +
                                                " entries, expected " +
                                                std::to_string(n_qubits * n_layers));
        }
        if (readout_qubit >= n_qubits) {
            throw error(error_kind::config, "vqc_model: readout qubit out of range");
        }
    }
};

inline constexpr double probability_clamp = 1e-12;

/// Binary cross-entropy with p clamped to [1e-12, 1 - 1e-12].
[[nodiscard]] inline double bce_loss(double p, int y) noexcept {
    const double q = std::clamp(p, probability_clamp, 1.0 - probability_clamp);
    return y == 1 ? -std::log(q) : -std::log(1.0 - q);
}

/// d bce / d p, zero where the clamp is active.
[[nodiscard]] inline double bce_derivative(double p, int y) noexcept {
    if (p < probability_clamp || p > 1.0 - probability_clamp) return 0.0;
    return y == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

[[nodiscard]] constexpr int predict(double p) noexcept { return p >= 0.5 ? 1 : 0; }

/// P(|1>) on the readout qubit after applying `ansatz` with `theta` to `embedded`.
[[nodiscard]] inline double forward_state(const pure_state &embedded, const circuit &ansatz,
                                          std::span<const double> theta, std::size_t readout) {
    pure_state s = embedded;
    run_inplace(s, ansatz, {}, theta);
    return std::clamp(prob_one(s, readout), 0.0, 1.0);
}

[[nodiscard]] inline double forward_state(const pure_state &embedded, const vqc_model &model) {
    model.validate();
    if (embedded.n_qubits() != model.n_qubits) {
        throw error(error_kind::dimension_mismatch, "forward: embedding and model qubit counts differ");
    }
    return forward_state(embedded, vqc_circuit(model.n_qubits, model.n_layers), model.theta,
                         model.readout_qubit);
}

/// P(|1>) of run(embedding followed by the ansatz).
[[nodiscard]] inline double forward(const circuit &encoder, const vqc_model &model,
                                    std::span<const double> features) {
    if (encoder.n_qubits() != model.n_qubits) {
        throw error(error_kind::dimension_mismatch,
                    "forward: embedding has " + std::to_string(encoder.n_qubits()) +
                        " qubits, model has " + std::to_string(model.n_qubits));
    }
    return forward_state(run(encoder, features), model);
}

/// Mean bce over `data`.
[[nodiscard]] inline double mean_loss(std::span<const encoded_sample> data, const vqc_model &model) {
    if (data.empty()) {
        throw error(error_kind::data, "mean_loss: empty set");
    }
    const circuit ansatz = vqc_circuit(model.n_qubits, model.n_layers);
    double total = 0.0;
    for (const auto &s : data) {
        total += bce_loss(forward_state(s.state, ansatz, model.theta, model.readout_qubit), s.label);
    }
    return total / static_cast<double>(data.size());
}

/**
 * @brief Gradient of the batch-mean bce with respect to theta.
 *
 * Every trainable gate is an Ry, so
 * dp/dtheta_k = [p(theta_k + pi/2) - p(theta_k - pi/2)] / 2 exactly.
 */
[[nodiscard]] inline std::vector<double> gradient(std::span<const encoded_sample> batch,
                                                  const vqc_model &model) {
    if (batch.empty()) {
        throw error(error_kind::data, "gradient: empty batch");
    }
    model.validate();
    const circuit ansatz = vqc_circuit(model.n_qubits, model.n_layers);
    const double shift = std::numbers::pi / 2;
    std::vector<double> grad(model.theta.size(), 0.0);
    std::vector<double> shifted = model.theta;
    for (const auto &s : batch) {
        const double p = forward_state(s.state, ansatz, model.theta, model.readout_qubit);
        const double dl_dp = bce_derivative(p, s.label);
        if (dl_dp == 0.0) continue;
        for (std::size_t k = 0; k < shifted.size(); ++k) {
            shifted[k] = model.theta[k] + shift;
            const double plus = forward_state(s.state, ansatz, shifted, model.readout_qubit);
            shifted[k] = model.theta[k] - shift;
            const double minus = forward_state(s.state, ansatz, shifted, model.readout_qubit);
            shifted[k] = model.theta[k];
            grad[k] += dl_dp * 0.5 * (plus - minus);
        }
    }
    for (auto &g : grad) g /= static_cast<double>(batch.size());
    return grad;
}

} // namespace qembed
