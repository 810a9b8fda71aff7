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
 * @file embedding.hpp
 * Uniform access to the circuit-based and amplitude encodings.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "../datasets/sample.hpp"
#include "../qsim/simulator.hpp"
#include "baselines.hpp"

namespace qembed {

enum class encoder_kind { greedy, amplitude, angle };

[[nodiscard]] inline std::string to_string(encoder_kind k) {
    switch (k) {
    case encoder_kind::greedy:
        return "greedy";
    case encoder_kind::amplitude:
        return "amplitude";
    case encoder_kind::angle:
        return "angle";
    }
    return "?";
}

[[nodiscard]] inline encoder_kind encoder_kind_from_string(const std::string &s) {
    for (auto k : {encoder_kind::greedy, encoder_kind::amplitude, encoder_kind::angle}) {
        if (to_string(k) == s) return k;
    }
    throw error(error_kind::config, "unknown encoder kind '" + s + "'");
}

/// Maps a feature vector to a pure state, either by running a circuit or
/// by idealized amplitude encoding.
class embedding {
  public:
    static embedding from_circuit(circuit c) {
        embedding e;
        e.n_qubits_ = c.n_qubits();
        e.circuit_ = std::move(c);
        return e;
    }

    static embedding amplitude(std::size_t n_qubits) {
        embedding e;
        e.n_qubits_ = n_qubits;
        return e;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const circuit *as_circuit() const noexcept {
        return circuit_ ? &*circuit_ : nullptr;
    }

    [[nodiscard]] pure_state encode(std::span<const double> features) const {
        if (circuit_) return run(*circuit_, features);
        return amplitude_encode_state(features, n_qubits_);
    }

  private:
    embedding() = default;

    std::size_t n_qubits_ = 0;
    std::optional<circuit> circuit_;
};

struct encoded_sample {
    pure_state state;
    int label = 0;
};

[[nodiscard]] inline std::vector<encoded_sample> encode_all(const embedding &e,
                                                            const sample_set &samples) {
    std::vector<encoded_sample> out;
    out.reserve(samples.size());
    for (const auto &s : samples) {
        out.push_back({e.encode(s.features), s.label});
    }
    return out;
}

} // namespace qembed
