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
 * @file baselines.hpp
 * Amplitude and angle encodings, and Mottonen state preparation built from
 * uniformly controlled rotations.
 */
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "../qsim/circuit.hpp"
#include "../qsim/state.hpp"
#include "gate_counts.hpp"

namespace qembed {

/// Zero-pads `features` to 2^n_qubits entries and L2-normalizes.
[[nodiscard]] inline pure_state amplitude_encode_state(std::span<const double> features,
                                                       std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (features.size() > dim) {
        throw error(error_kind::dimension_mismatch,
                    std::to_string(features.size()) + " features do not fit " +
                        std::to_string(n_qubits) + " qubits");
    }
    double norm2 = 0.0;
    for (double x : features) norm2 += x * x;
    if (norm2 == 0.0) {
        throw error(error_kind::numeric, "amplitude_encode_state: all-zero feature vector");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<complex_t> amps(dim, complex_t{0.0, 0.0});
    for (std::size_t i = 0; i < features.size(); ++i) amps[i] = features[i] * inv;
    return pure_state::from_amplitudes(std::move(amps));
}

/// One qubit per feature carrying Ry(2 x_i), i.e. cos(x_i)|0> + sin(x_i)|1>.
[[nodiscard]] inline circuit angle_encode_circuit(std::size_t n_features) {
    if (n_features == 0 || n_features > max_qubits) {
        throw error(error_kind::invalid_argument,
                    "angle_encode_circuit: feature count must be in [1, " +
                        std::to_string(max_qubits) + "]");
    }
    circuit c(n_features);
    for (std::size_t q = 0; q < n_features; ++q) {
        c.add(gate::ry(q, angle_source::feature(q, 2.0)));
    }
    return c;
}

/**
 * @brief Appends a rotation on `target` uniformly controlled by `controls`.
 *
 * `alphas[j]` is the angle applied when the controls read j, with
 * controls[0] as the most significant bit. Uses the Gray-code
 * decomposition: 2^k rotations interleaved with 2^k CNOTs (none for k=0).
 */
inline void append_uniformly_controlled(circuit &c, gate_kind axis,
                                        std::span<const std::size_t> controls,
                                        std::size_t target, std::span<const double> alphas) {
    const std::size_t k = controls.size();
    const std::size_t count = std::size_t{1} << k;
    if (alphas.size() != count) {
        throw error(error_kind::invalid_argument, "uniformly controlled rotation: angle count");
    }
    if (k == 0) {
        c.add(gate::rotation(axis, target, angle_source::fixed(alphas[0])));
        return;
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t g = i ^ (i >> 1);
        double theta = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            theta += (std::popcount(j & g) % 2 == 0 ? alphas[j] : -alphas[j]);
        }
        c.add(gate::rotation(axis, target, angle_source::fixed(theta * inv)));
        const std::size_t next = (i + 1) % count;
        const std::size_t flipped = g ^ (next ^ (next >> 1));
        const auto bit = static_cast<std::size_t>(std::countr_zero(flipped));
        c.add(gate::cnot(controls[k - 1 - bit], target));
    }
}

namespace detail {

inline double block_norm(std::span<const double> mags, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += mags[i] * mags[i];
    return std::sqrt(acc);
}

inline std::size_t log2_exact(std::size_t dim, const char *what) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw error(error_kind::dimension_mismatch,
                    std::string(what) + ": length must be a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

/// Ry stage. With `signed_leaves` the last level takes atan2 of the signed
/// leaf values, which prepares real signed targets without a phase stage.
inline void append_ry_stage(circuit &c, std::span<const double> values, bool signed_leaves) {
    const std::size_t n = c.n_qubits();
    const std::size_t dim = values.size();
    std::vector<double> mags(dim);
    for (std::size_t i = 0; i < dim; ++i) mags[i] = std::abs(values[i]);
    std::vector<std::size_t> controls;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t block = dim >> t;
        std::vector<double> alphas(std::size_t{1} << t);
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const std::size_t lo = j * block, mid = lo + block / 2, hi = lo + block;
            if (t + 1 == n && signed_leaves) {
                alphas[j] = 2.0 * std::atan2(values[mid], values[lo]);
            } else {
                alphas[j] = 2.0 * std::atan2(block_norm(mags, mid, hi), block_norm(mags, lo, mid));
            }
        }
        append_uniformly_controlled(c, gate_kind::ry, controls, t, alphas);
        controls.push_back(t);
    }
}

/// Rz stage giving basis state i the phase phases[i] up to a global phase.
inline void append_rz_stage(circuit &c, std::span<const double> phases) {
    const std::size_t n = c.n_qubits();
    const std::size_t dim = phases.size();
    auto mean = [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += phases[i];
        return acc / static_cast<double>(hi - lo);
    };
    std::vector<std::size_t> controls;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t block = dim >> t;
        std::vector<double> alphas(std::size_t{1} << t);
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const std::size_t lo = j * block, mid = lo + block / 2, hi = lo + block;
            alphas[j] = mean(mid, hi) - mean(lo, mid);
        }
        append_uniformly_controlled(c, gate_kind::rz, controls, t, alphas);
        controls.push_back(t);
    }
}

} // namespace detail

/**
 * @brief Mottonen preparation of a real, unit-norm amplitude vector.
 *
 * Uniformly controlled Ry rotations only: 2^n - 1 rotations and 2^n - 2
 * CNOTs. Signed entries are handled by the last Ry level.
 */
[[nodiscard]] inline circuit mottonen_circuit(std::span<const double> target) {
    const std::size_t n = detail::log2_exact(target.size(), "mottonen_circuit");
    double norm2 = 0.0;
    for (double v : target) norm2 += v * v;
    if (std::abs(std::sqrt(norm2) - 1.0) > norm_tolerance) {
        throw error(error_kind::numeric, "mottonen_circuit: target is not unit-norm");
    }
    circuit c(n);
    detail::append_ry_stage(c, target, true);
    return c;
}

/// Mottonen preparation of an arbitrary complex state (Ry stage, then Rz
/// stage), exact up to a global phase.
[[nodiscard]] inline circuit mottonen_circuit(std::span<const complex_t> target) {
    const std::size_t n = detail::log2_exact(target.size(), "mottonen_circuit");
    double norm2 = 0.0;
    std::vector<double> mags(target.size()), phases(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        mags[i] = std::abs(target[i]);
        phases[i] = std::arg(target[i]);
        norm2 += mags[i] * mags[i];
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > norm_tolerance) {
        throw error(error_kind::numeric, "mottonen_circuit: target is not unit-norm");
    }
    circuit c(n);
    detail::append_ry_stage(c, mags, false);
    detail::append_rz_stage(c, phases);
    return c;
}

/// Circuit taking |source> to |target> (up to phase): the inverse
/// preparation of `source` followed by the preparation of `target`.
[[nodiscard]] inline circuit mottonen_transform_circuit(std::span<const complex_t> source,
                                                        std::span<const complex_t> target) {
    circuit c = mottonen_circuit(source).inverse();
    c.append(mottonen_circuit(target));
    return c;
}

/**
 * @brief Gate counts of the general Mottonen construction on n qubits.
 *
 * Counts the arbitrary-state to arbitrary-state transformation between
 * two generic complex states (both Ry and Rz stages, no angle pruning),
 * which is the usual reference figure for Mottonen amplitude encoding:
 * 2^(n+2) - 8 CNOTs and 2^(n+2) - 4 - n merged rotations.
 */
[[nodiscard]] inline gate_counts mottonen_reference_counts(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw error(error_kind::invalid_argument, "mottonen_reference_counts: qubit count");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::mt19937_64 rng(n_qubits);
    std::normal_distribution<double> normal;
    auto random_state = [&] {
        std::vector<complex_t> v(dim);
        double norm2 = 0.0;
        for (auto &a : v) {
            a = {normal(rng), normal(rng)};
            norm2 += std::norm(a);
        }
        for (auto &a : v) a /= std::sqrt(norm2);
        return v;
    };
    const auto a = random_state();
    const auto b = random_state();
    return count_gates(mottonen_transform_circuit(a, b));
}

} // namespace qembed
