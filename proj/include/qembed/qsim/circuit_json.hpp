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
 * @file circuit_json.hpp
 * JSON form of a circuit:
 *
 *   {"n_qubits": 6,
 *    "gates": [{"kind": "ry", "qubits": [0],
 *               "angle_source": {"type": "feature", "index": 3, "scale": 1.0}},
 *              {"kind": "cnot", "qubits": [0, 1]}]}
 *
 * Angle source types are "feature", "param", "const" and "sum" (a merged
 * rotation carrying a constant "value" plus a "terms" list).
 */
#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "circuit.hpp"

namespace qembed {

namespace detail {

inline const char *input_name(angle_input in) {
    return in == angle_input::feature ? "feature" : "param";
}

inline nlohmann::json term_to_json(const angle_term &t) {
    return {{"type", input_name(t.input)}, {"index", t.index}, {"scale", t.scale}};
}

inline angle_term term_from_json(const nlohmann::json &j) {
    const auto type = j.at("type").get<std::string>();
    angle_term t;
    if (type == "feature") {
        t.input = angle_input::feature;
    } else if (type == "param") {
        t.input = angle_input::param;
    } else {
        throw error(error_kind::invalid_circuit, "unknown angle term type '" + type + "'");
    }
    t.index = j.at("index").get<std::size_t>();
    t.scale = j.value("scale", 1.0);
    return t;
}

inline nlohmann::json angle_to_json(const angle_source &a) {
    if (a.terms.empty()) {
        return {{"type", "const"}, {"value", a.constant}};
    }
    if (a.terms.size() == 1 && a.constant == 0.0) {
        return term_to_json(a.terms.front());
    }
    auto terms = nlohmann::json::array();
    for (const auto &t : a.terms) {
        terms.push_back(term_to_json(t));
    }
    return {{"type", "sum"}, {"value", a.constant}, {"terms", terms}};
}

inline angle_source angle_from_json(const nlohmann::json &j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "const") {
        return angle_source::fixed(j.at("value").get<double>());
    }
    if (type == "sum") {
        angle_source a;
        a.constant = j.value("value", 0.0);
        for (const auto &t : j.at("terms")) {
            a.terms.push_back(term_from_json(t));
        }
        return a;
    }
    return {0.0, {term_from_json(j)}};
}

} // namespace detail

[[nodiscard]] inline nlohmann::json to_json(const circuit &c) {
    auto gates = nlohmann::json::array();
    for (const auto &g : c.gates()) {
        nlohmann::json jg{{"kind", std::string(to_string(g.kind))}};
        if (is_rotation(g.kind)) {
            jg["qubits"] = {g.target};
            jg["angle_source"] = detail::angle_to_json(g.angle);
        } else {
            jg["qubits"] = {g.control, g.target};
        }
        gates.push_back(std::move(jg));
    }
    return {{"n_qubits", c.n_qubits()}, {"gates", std::move(gates)}};
}

[[nodiscard]] inline circuit circuit_from_json(const nlohmann::json &j) {
    try {
        circuit c(j.at("n_qubits").get<std::size_t>());
        for (const auto &jg : j.at("gates")) {
            const auto kind = gate_kind_from_string(jg.at("kind").get<std::string>());
            const auto &qubits = jg.at("qubits");
            if (is_rotation(kind)) {
                if (qubits.size() != 1) {
                    throw error(error_kind::invalid_circuit, "rotation needs exactly one qubit");
                }
                c.add(gate::rotation(kind, qubits[0].get<std::size_t>(),
                                     detail::angle_from_json(jg.at("angle_source"))));
            } else {
                if (qubits.size() != 2) {
                    throw error(error_kind::invalid_circuit, "two-qubit gate needs two qubits");
                }
                c.add({kind, qubits[0].get<std::size_t>(), qubits[1].get<std::size_t>(), {}});
            }
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw error(error_kind::invalid_circuit, std::string("circuit JSON: ") + e.what());
    }
}

inline void save_circuit(const circuit &c, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw error(error_kind::data, "cannot write " + path);
    }
    out << to_json(c).dump(2) << '\n';
}

[[nodiscard]] inline circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw error(error_kind::data, "cannot read " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw error(error_kind::invalid_circuit, path + ": " + e.what());
    }
    return circuit_from_json(j);
}

} // namespace qembed
