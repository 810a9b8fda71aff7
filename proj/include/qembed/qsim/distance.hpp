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
 * @file distance.hpp
 * Overlaps, trace distances and single-qubit measurement probabilities.
 */
#pragma once

#include <algorithm>
#include <cmath>

#include "state.hpp"

namespace qembed {

namespace detail {
inline void check_same_size(const pure_state &a, const pure_state &b, const char *what) {
    if (a.dimension() != b.dimension()) {
        throw error(error_kind::dimension_mismatch,
                    std::string(what) + ": states of " + std::to_string(a.n_qubits()) + " and " +
                        std::to_string(b.n_qubits()) + " qubits");
    }
}
} // namespace detail

/// <a|b>.
[[nodiscard]] inline complex_t overlap(const pure_state &a, const pure_state &b) {
    detail::check_same_size(a, b, "overlap");
    complex_t acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

/// Trace distance between |a><a| and |b><b|, i.e. sqrt(1 - |<a|b>|^2).
[[nodiscard]] inline double trace_distance_pure(const pure_state &a, const pure_state &b) {
    const double f = std::norm(overlap(a, b));
    return std::sqrt(std::clamp(1.0 - f, 0.0, 1.0));
}

[[nodiscard]] inline density_matrix to_density_matrix(const pure_state &s) {
    const auto amps = s.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return density_matrix(v * v.adjoint());
}

/// Half the sum of absolute eigenvalues of r1 - r2.
[[nodiscard]] inline double trace_distance_dm(const density_matrix &r1, const density_matrix &r2) {
    if (r1.n_qubits() != r2.n_qubits()) {
        throw error(error_kind::dimension_mismatch, "trace_distance_dm: size mismatch");
    }
    const Eigen::MatrixXcd diff = r1.entries() - r2.entries();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

/// Probability of reading 1 on `qubit`.
[[nodiscard]] inline double prob_one(const pure_state &s, std::size_t qubit) {
    if (qubit >= s.n_qubits()) {
        throw error(error_kind::invalid_argument,
                    "prob_one: qubit " + std::to_string(qubit) + " out of range");
    }
    const std::size_t mask = qubit_mask(s.n_qubits(), qubit);
    const auto amps = s.amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) != 0) p += std::norm(amps[i]);
    }
    return p;
}

[[nodiscard]] inline double prob_zero(const pure_state &s, std::size_t qubit) {
    if (qubit >= s.n_qubits()) {
        throw error(error_kind::invalid_argument,
                    "prob_zero: qubit " + std::to_string(qubit) + " out of range");
    }
    const std::size_t mask = qubit_mask(s.n_qubits(), qubit);
    const auto amps = s.amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == 0) p += std::norm(amps[i]);
    }
    return p;
}

} // namespace qembed
