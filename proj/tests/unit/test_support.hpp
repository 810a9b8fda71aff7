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
#pragma once

#include <complex>
#include <random>
#include <vector>

#include <qembed/qembed.hpp>

namespace qembed::testing {

/// Haar-like random pure state from normalized complex Gaussians.
inline pure_state random_state(std::size_t n_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    std::vector<complex_t> amps(std::size_t{1} << n_qubits);
    double norm2 = 0.0;
    for (auto &a : amps) {
        a = {normal(rng), normal(rng)};
        norm2 += std::norm(a);
    }
    for (auto &a : amps) a /= std::sqrt(norm2);
    return pure_state::from_amplitudes(std::move(amps));
}

/// Random circuit over the full gate pool with feature, param and const angles.
inline circuit random_circuit(std::size_t n_qubits, std::size_t n_gates, std::size_t n_features,
                              std::size_t n_params, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> kind_pick(0, n_qubits > 1 ? 4 : 2);
    std::uniform_int_distribution<std::size_t> qubit(0, n_qubits - 1);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    circuit c(n_qubits);
    for (std::size_t i = 0; i < n_gates; ++i) {
        const auto kind = static_cast<gate_kind>(kind_pick(rng));
        if (is_rotation(kind)) {
            angle_source a;
            switch (rng() % 3) {
            case 0:
                a = n_features ? angle_source::feature(rng() % n_features, angle(rng))
                               : angle_source::fixed(angle(rng));
                break;
            case 1:
                a = n_params ? angle_source::param(rng() % n_params) : angle_source::fixed(angle(rng));
                break;
            default:
                a = angle_source::fixed(angle(rng));
            }
            c.add(gate::rotation(kind, qubit(rng), a));
        } else {
            const std::size_t ctl = qubit(rng);
            std::size_t tgt = qubit(rng);
            while (tgt == ctl) tgt = qubit(rng);
            c.add({kind, ctl, tgt, {}});
        }
    }
    return c;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64 &rng, double lo = -3.0,
                                         double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v) x = u(rng);
    return v;
}

inline double max_abs_diff(const pure_state &a, const pure_state &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// max_i |a_i - e^{i phi} b_i| with the global phase phi fitted from <b|a>.
inline double max_abs_diff_up_to_phase(const pure_state &a, const pure_state &b) {
    const complex_t ov = overlap(b, a);
    const complex_t phase = std::abs(ov) > 0 ? ov / std::abs(ov) : complex_t{1.0, 0.0};
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) m = std::max(m, std::abs(a[i] - phase * b[i]));
    return m;
}

} // namespace qembed::testing
