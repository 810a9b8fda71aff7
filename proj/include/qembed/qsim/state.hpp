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
 * @file state.hpp
 * Dense pure states and density matrices.
 *
 * Basis ordering: qubit 0 is the most significant bit of the basis index,
 * so for n qubits the amplitude of |b_0 b_1 ... b_{n-1}> sits at index
 * sum_q b_q * 2^(n-1-q).
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../error.hpp"

namespace qembed {

using complex_t = std::complex<double>;

inline constexpr std::size_t max_qubits = 12;
inline constexpr double norm_tolerance = 1e-9;

/// Bit mask selecting qubit `q` in a basis index of an `n`-qubit register.
[[nodiscard]] constexpr std::size_t qubit_mask(std::size_t n_qubits,
                                               std::size_t q) noexcept {
    return std::size_t{1} << (n_qubits - 1 - q);
}

class pure_state {
  public:
    pure_state() = default;

    /// |0...0> on `n_qubits` qubits.
    explicit pure_state(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0 || n_qubits > max_qubits) {
            throw error(error_kind::invalid_argument,
                        "pure_state: qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(max_qubits) + "]");
        }
        amplitudes_.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    /// Wraps explicit amplitudes; the length must be a power of two and the
    /// vector must be unit-norm within `norm_tolerance`.
    static pure_state from_amplitudes(std::vector<complex_t> amplitudes) {
        const std::size_t dim = amplitudes.size();
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw error(error_kind::dimension_mismatch,
                        "pure_state: amplitude count " + std::to_string(dim) +
                            " is not a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < dim) {
            ++n;
        }
        pure_state s(n);
        s.amplitudes_ = std::move(amplitudes);
        if (std::abs(s.norm() - 1.0) > norm_tolerance) {
            throw error(error_kind::numeric, "pure_state: amplitudes not unit-norm");
        }
        return s;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }

    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amplitudes_; }

    [[nodiscard]] const complex_t &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm() const noexcept {
        double acc = 0.0;
        for (const auto &a : amplitudes_) {
            acc += std::norm(a);
        }
        return std::sqrt(acc);
    }

  private:
    std::size_t n_qubits_ = 0;
    std::vector<complex_t> amplitudes_;
};

class density_matrix {
  public:
    using matrix_type = Eigen::MatrixXcd;

    density_matrix() = default;

    /// Validates Hermiticity, unit trace and positivity, each within 1e-9.
    explicit density_matrix(matrix_type entries) : entries_(std::move(entries)) {
        const auto dim = static_cast<std::size_t>(entries_.rows());
        if (entries_.rows() != entries_.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
            throw error(error_kind::dimension_mismatch,
                        "density_matrix: matrix must be square with power-of-two side");
        }
        while ((std::size_t{1} << n_qubits_) < dim) {
            ++n_qubits_;
        }
        if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > norm_tolerance) {
            throw error(error_kind::numeric, "density_matrix: not Hermitian");
        }
        if (std::abs(entries_.trace() - complex_t{1.0, 0.0}) > norm_tolerance) {
            throw error(error_kind::numeric, "density_matrix: trace differs from 1");
        }
        Eigen::SelfAdjointEigenSolver<matrix_type> solver(entries_, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -norm_tolerance) {
            throw error(error_kind::numeric, "density_matrix: negative eigenvalue");
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const matrix_type &entries() const noexcept { return entries_; }

  private:
    std::size_t n_qubits_ = 0;
    matrix_type entries_;
};

} // namespace qembed
