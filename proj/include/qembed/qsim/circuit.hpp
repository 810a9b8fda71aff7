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
 * @file circuit.hpp
 * Gate and circuit representation. Rotation angles are linear expressions
 * over the input features and the trainable parameters.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "../error.hpp"

namespace qembed {

enum class gate_kind : std::uint8_t { rx, ry, rz, cnot, cz };

[[nodiscard]] constexpr bool is_rotation(gate_kind k) noexcept {
    return k == gate_kind::rx || k == gate_kind::ry || k == gate_kind::rz;
}

[[nodiscard]] constexpr std::string_view to_string(gate_kind k) noexcept {
    switch (k) {
    case gate_kind::rx:
        return "rx";
    case gate_kind::ry:
        return "ry";
    case gate_kind::rz:
        return "rz";
    case gate_kind::cnot:
        return "cnot";
    case gate_kind::cz:
        return "cz";
    }
    return "?";
}

[[nodiscard]] inline gate_kind gate_kind_from_string(std::string_view s) {
    for (auto k : {gate_kind::rx, gate_kind::ry, gate_kind::rz, gate_kind::cnot,
                   gate_kind::cz}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw error(error_kind::invalid_circuit, "unknown gate kind '" + std::string(s) + "'");
}

enum class angle_input : std::uint8_t { feature, param };

struct angle_term {
    angle_input input = angle_input::feature;
    std::size_t index = 0;
    double scale = 1.0;

    friend bool operator==(const angle_term &, const angle_term &) = default;
};

/**
 * @brief Rotation angle `constant + sum_k scale_k * input_k`.
 *
 * A freshly built gate carries exactly one of: a single feature term, a
 * single parameter term or a bare constant. Merged rotations may carry
 * several terms.
 */
struct angle_source {
    double constant = 0.0;
    std::vector<angle_term> terms;

    static angle_source feature(std::size_t index, double scale = 1.0) {
        return {0.0, {{angle_input::feature, index, scale}}};
    }
    static angle_source param(std::size_t index) {
        return {0.0, {{angle_input::param, index, 1.0}}};
    }
    static angle_source fixed(double value) { return {value, {}}; }

    [[nodiscard]] double resolve(std::span<const double> features,
                                 std::span<const double> params) const {
        double theta = constant;
        for (const auto &t : terms) {
            const auto &src = t.input == angle_input::feature ? features : params;
            if (t.index >= src.size()) {
                throw error(error_kind::invalid_circuit,
                            std::string(t.input == angle_input::feature ? "feature" : "param") +
                                " index " + std::to_string(t.index) + " out of range (" +
                                std::to_string(src.size()) + " supplied)");
            }
            theta += t.scale * src[t.index];
        }
        return theta;
    }

    /// Adds `other` into this expression, combining terms on the same input.
    void accumulate(const angle_source &other) {
        constant += other.constant;
        for (const auto &t : other.terms) {
            auto it = std::find_if(terms.begin(), terms.end(), [&](const angle_term &u) {
                return u.input == t.input && u.index == t.index;
            });
            if (it == terms.end()) {
                terms.push_back(t);
            } else {
                it->scale += t.scale;
            }
        }
    }

    [[nodiscard]] angle_source negated() const {
        angle_source out{-constant, terms};
        for (auto &t : out.terms) {
            t.scale = -t.scale;
        }
        return out;
    }

    friend bool operator==(const angle_source &, const angle_source &) = default;
};

/**
 * @brief One gate of the pool {Rx, Ry, Rz, CNOT, CZ}.
 *
 * Rotations act on `target`; `control` equals `target` for them.
 */
struct gate {
    gate_kind kind = gate_kind::ry;
    std::size_t control = 0;
    std::size_t target = 0;
    angle_source angle;

    static gate rotation(gate_kind kind, std::size_t qubit, angle_source angle) {
        return {kind, qubit, qubit, std::move(angle)};
    }
    static gate rx(std::size_t q, angle_source a) { return rotation(gate_kind::rx, q, std::move(a)); }
    static gate ry(std::size_t q, angle_source a) { return rotation(gate_kind::ry, q, std::move(a)); }
    static gate rz(std::size_t q, angle_source a) { return rotation(gate_kind::rz, q, std::move(a)); }
    static gate cnot(std::size_t control, std::size_t target) {
        return {gate_kind::cnot, control, target, {}};
    }
    static gate cz(std::size_t control, std::size_t target) {
        return {gate_kind::cz, control, target, {}};
    }

    [[nodiscard]] bool touches(std::size_t q) const noexcept {
        return q == target || q == control;
    }

    /// Inverse gate: rotation with negated angle; CNOT and CZ are self-inverse.
    [[nodiscard]] gate inverse() const {
        gate g = *this;
        if (is_rotation(kind)) {
            g.angle = angle.negated();
        }
        return g;
    }

    /// Short label such as "ry(2)" or "cnot(0,1)".
    [[nodiscard]] std::string label() const {
        std::string s(to_string(kind));
        if (is_rotation(kind)) {
            return s + "(" + std::to_string(target) + ")";
        }
        return s + "(" + std::to_string(control) + "," + std::to_string(target) + ")";
    }

    friend bool operator==(const gate &, const gate &) = default;
};

class circuit {
  public:
    circuit() = default;
    explicit circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
        if (n_qubits == 0) {
            throw error(error_kind::invalid_circuit, "circuit: needs at least one qubit");
        }
    }

    /// Appends `g` after checking qubit indices against the register size.
    circuit &add(gate g) {
        validate(g);
        for (const auto &t : g.angle.terms) {
            auto &count = t.input == angle_input::feature ? feature_count_ : param_count_;
            count = std::max(count, t.index + 1);
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    circuit &append(const circuit &other) {
        if (other.n_qubits_ != n_qubits_) {
            throw error(error_kind::dimension_mismatch,
                        "circuit: cannot append a " + std::to_string(other.n_qubits_) +
                            "-qubit circuit to a " + std::to_string(n_qubits_) + "-qubit one");
        }
        for (const auto &g : other.gates_) {
            add(g);
        }
        return *this;
    }

    void pop_back() {
        gates_.pop_back();
        recount();
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// One past the largest referenced feature index (0 when none).
    [[nodiscard]] std::size_t feature_count() const noexcept { return feature_count_; }
    /// One past the largest referenced parameter index (0 when none).
    [[nodiscard]] std::size_t param_count() const noexcept { return param_count_; }

    /// Reversed gate order with every gate inverted.
    [[nodiscard]] circuit inverse() const {
        circuit out(n_qubits_);
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            out.add(it->inverse());
        }
        return out;
    }

    friend bool operator==(const circuit &, const circuit &) = default;

  private:
    void validate(const gate &g) const {
        if (g.target >= n_qubits_ || g.control >= n_qubits_) {
            throw error(error_kind::invalid_circuit,
                        "gate " + g.label() + " outside " + std::to_string(n_qubits_) +
                            "-qubit register");
        }
        if (is_rotation(g.kind)) {
            if (g.control != g.target) {
                throw error(error_kind::invalid_circuit, "rotation with distinct control");
            }
        } else if (g.control == g.target) {
            throw error(error_kind::invalid_circuit, "gate " + g.label() + ": control == target");
        }
    }

    void recount() {
        feature_count_ = param_count_ = 0;
        for (const auto &g : gates_) {
            for (const auto &t : g.angle.terms) {
                auto &count = t.input == angle_input::feature ? feature_count_ : param_count_;
                count = std::max(count, t.index + 1);
            }
        }
    }

    std::size_t n_qubits_ = 0;
    std::vector<gate> gates_;
    std::size_t feature_count_ = 0;
    std::size_t param_count_ = 0;
};

} // namespace qembed
