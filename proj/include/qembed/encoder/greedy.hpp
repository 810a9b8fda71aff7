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
 * @file greedy.hpp
 * Greedy, feature-by-feature construction of an encoding circuit that
 * minimizes the summed triplet loss over trace distances.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "../qsim/circuit.hpp"
#include "../qsim/distance.hpp"
#include "../qsim/simulator.hpp"
#include "triplets.hpp"

namespace qembed {

enum class tie_break { first, random };

/// ceil(log2(n_features)), at least 1.
[[nodiscard]] inline std::size_t default_qubit_count(std::size_t n_features) {
    std::size_t n = 1;
    while ((std::size_t{1} << n) < n_features) ++n;
    return n;
}

struct greedy_config {
    std::size_t n_qubits = 0; ///< 0 selects default_qubit_count(n_features)
    double w0 = 1.0;
    double w_damping = 0.01;
    double margin = 0.0;
    loss_kind loss = loss_kind::linear;
    std::optional<std::size_t> max_gates;
    std::vector<std::size_t> feature_order; ///< empty selects 0, 1, ..., n_features-1
    tie_break ties = tie_break::first;
    std::uint64_t seed = 0;
    double feature_scale = 1.0;
};

/// Weight in force at feature step `k` (0-based): max(0, w0 - k*w_damping).
[[nodiscard]] inline double weight_at_step(const greedy_config &cfg, std::size_t k) noexcept {
    return std::max(0.0, cfg.w0 - static_cast<double>(k) * cfg.w_damping);
}

/**
 * @brief Every gate the search considers for one feature.
 *
 * Rx, Ry, Rz on each qubit (kind-major, then qubit) bound to
 * `feature_index`, followed by CNOT then CZ over all ordered
 * (control, target) pairs. Size 3n + 2n(n-1).
 */
[[nodiscard]] inline std::vector<gate> candidate_pool(std::size_t n_qubits,
                                                      std::size_t feature_index,
                                                      double scale = 1.0) {
    if (n_qubits == 0) {
        throw error(error_kind::invalid_argument, "candidate_pool: n_qubits must be >= 1");
    }
    std::vector<gate> pool;
    pool.reserve(3 * n_qubits + 2 * n_qubits * (n_qubits - 1));
    for (auto kind : {gate_kind::rx, gate_kind::ry, gate_kind::rz}) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            pool.push_back(gate::rotation(kind, q, angle_source::feature(feature_index, scale)));
        }
    }
    for (auto kind : {gate_kind::cnot, gate_kind::cz}) {
        for (std::size_t c = 0; c < n_qubits; ++c) {
            for (std::size_t t = 0; t < n_qubits; ++t) {
                if (c != t) pool.push_back({kind, c, t, {}});
            }
        }
    }
    return pool;
}

/// What one feature step evaluated and kept.
struct greedy_step {
    std::size_t feature = 0;
    double w = 0.0;
    gate chosen;
    std::optional<gate> follow_up;     ///< rotation appended after an entangler
    double selection_loss = 0.0;       ///< loss of `chosen`
    double loss = 0.0;                 ///< loss after the step (follow-up included)
    std::vector<double> candidate_losses; ///< one per candidate_pool entry
    std::vector<double> follow_up_losses; ///< one per rotation, empty without follow-up
};

struct greedy_result {
    circuit encoder;
    std::vector<greedy_step> steps;
};

namespace detail {

/// Running states of every triplet member under the circuit built so far.
class triplet_states {
  public:
    triplet_states(std::span<const triplet> triplets, std::size_t n_qubits)
        : triplets_(triplets) {
        states_.assign(3 * triplets.size(), pure_state(n_qubits));
        scratch_ = states_;
    }

    /// Total loss if `g` (angle from `feature`) were appended.
    double trial_loss(const gate &g, double scale, std::size_t feature, double w, double margin,
                      loss_kind kind) {
        for (std::size_t t = 0; t < triplets_.size(); ++t) {
            const std::vector<double> *members[3] = {&triplets_[t].anchor, &triplets_[t].positive,
                                                     &triplets_[t].negative};
            for (std::size_t m = 0; m < 3; ++m) {
                auto &s = scratch_[3 * t + m];
                std::copy(states_[3 * t + m].amplitudes().begin(),
                          states_[3 * t + m].amplitudes().end(), s.amplitudes().begin());
                apply_gate_inplace(s, g, scale * (*members[m])[feature]);
            }
        }
        return loss_of(scratch_, w, margin, kind);
    }

    void commit(const gate &g, double scale, std::size_t feature) {
        for (std::size_t t = 0; t < triplets_.size(); ++t) {
            const std::vector<double> *members[3] = {&triplets_[t].anchor, &triplets_[t].positive,
                                                     &triplets_[t].negative};
            for (std::size_t m = 0; m < 3; ++m) {
                apply_gate_inplace(states_[3 * t + m], g, scale * (*members[m])[feature]);
            }
        }
    }

  private:
    double loss_of(const std::vector<pure_state> &s, double w, double margin, loss_kind kind) const {
        double total = 0.0;
        for (std::size_t t = 0; t < triplets_.size(); ++t) {
            const double d_ap = trace_distance_pure(s[3 * t], s[3 * t + 1]);
            const double d_an = trace_distance_pure(s[3 * t], s[3 * t + 2]);
            total += triplet_loss(d_ap, d_an, w, margin, kind);
        }
        return total;
    }

    std::span<const triplet> triplets_;
    std::vector<pure_state> states_;
    std::vector<pure_state> scratch_;
};

/// Index of the minimum; ties resolved by `ties`.
inline std::size_t pick_min(const std::vector<double> &losses, tie_break ties,
                            std::mt19937_64 &rng) {
    const auto best = std::min_element(losses.begin(), losses.end());
    if (ties == tie_break::first) {
        return static_cast<std::size_t>(best - losses.begin());
    }
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (losses[i] == *best) tied.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
    return tied[pick(rng)];
}

} // namespace detail

/**
 * @brief Builds the encoding circuit one feature at a time.
 *
 * For each feature (in `cfg.feature_order`) every candidate_pool gate is
 * trial-appended and scored by the summed triplet loss with the current
 * weight; the argmin is kept. An entangler winner is followed by the best
 * rotation carrying the same feature, so every feature lands in exactly
 * one rotation. Stops after the last feature or once the circuit holds
 * `cfg.max_gates` gates.
 */
[[nodiscard]] inline greedy_result greedy_build(std::span<const triplet> triplets,
                                                const greedy_config &cfg) {
    if (triplets.empty()) {
        throw error(error_kind::invalid_argument, "greedy_build: no triplets");
    }
    const std::size_t n_features = triplets.front().n_features();
    if (n_features == 0) {
        throw error(error_kind::invalid_argument, "greedy_build: zero features");
    }
    for (const auto &t : triplets) {
        if (t.anchor.size() != n_features || t.positive.size() != n_features ||
            t.negative.size() != n_features) {
            throw error(error_kind::dimension_mismatch, "greedy_build: triplet feature lengths differ");
        }
    }
    if (!(cfg.w0 > 0.0) || cfg.w_damping < 0.0 || cfg.margin < 0.0) {
        throw error(error_kind::config, "greedy_build: need w0 > 0, w_damping >= 0, margin >= 0");
    }
    std::vector<std::size_t> order = cfg.feature_order;
    if (order.empty()) {
        order.resize(n_features);
        std::iota(order.begin(), order.end(), std::size_t{0});
    } else {
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i || sorted.size() != n_features) {
                throw error(error_kind::config,
                            "greedy_build: feature_order is not a permutation of the features");
            }
        }
    }
    const std::size_t n_qubits = cfg.n_qubits == 0 ? default_qubit_count(n_features) : cfg.n_qubits;

    greedy_result result{circuit(n_qubits), {}};
    detail::triplet_states states(triplets, n_qubits);
    std::mt19937_64 rng(cfg.seed);
    const double scale = cfg.feature_scale;

    for (std::size_t k = 0; k < order.size(); ++k) {
        if (cfg.max_gates && result.encoder.size() >= *cfg.max_gates) break;
        const std::size_t feature = order[k];
        greedy_step step;
        step.feature = feature;
        step.w = weight_at_step(cfg, k);

        const auto pool = candidate_pool(n_qubits, feature, scale);
        step.candidate_losses.reserve(pool.size());
        for (const auto &g : pool) {
            step.candidate_losses.push_back(
                states.trial_loss(g, scale, feature, step.w, cfg.margin, cfg.loss));
        }
        const std::size_t best = detail::pick_min(step.candidate_losses, cfg.ties, rng);
        step.chosen = pool[best];
        step.selection_loss = step.loss = step.candidate_losses[best];
        states.commit(step.chosen, scale, feature);
        result.encoder.add(step.chosen);

        if (!is_rotation(step.chosen.kind)) {
            const std::size_t n_rot = 3 * n_qubits;
            step.follow_up_losses.reserve(n_rot);
            for (std::size_t i = 0; i < n_rot; ++i) {
                step.follow_up_losses.push_back(
                    states.trial_loss(pool[i], scale, feature, step.w, cfg.margin, cfg.loss));
            }
            const std::size_t r = detail::pick_min(step.follow_up_losses, cfg.ties, rng);
            step.follow_up = pool[r];
            step.loss = step.follow_up_losses[r];
            states.commit(pool[r], scale, feature);
            result.encoder.add(pool[r]);
        }
        result.steps.push_back(std::move(step));
    }
    return result;
}

} // namespace qembed
