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

#include <cstdint>
#include <map>
#include <random>
#include <span>

#include "../qsim/distance.hpp"
#include "embedding.hpp"

namespace qembed {

struct separability {
    double intra_mean = 0.0;
    double inter_mean = 0.0;
    std::size_t intra_pairs = 0;
    std::size_t inter_pairs = 0;
};

inline constexpr std::size_t exhaustive_pair_limit = 200;
inline constexpr std::size_t sampled_pairs = 10000;

/**
 * @brief Mean trace distance over same-label and different-label pairs.
 *
 * Exhaustive below 200 samples, otherwise 10,000 seeded random pairs per set.
 */
[[nodiscard]] inline separability separability_report(std::span<const encoded_sample> data,
                                                      std::uint64_t seed = 0) {
    std::map<int, std::size_t> per_class;
    for (const auto &s : data) ++per_class[s.label];
    for (const auto &[label, count] : per_class) {
        if (count < 2) {
            throw error(error_kind::data, "separability_report: class " + std::to_string(label) +
                                              " has fewer than 2 samples");
        }
    }
    if (per_class.size() < 2) {
        throw error(error_kind::data, "separability_report: need two classes");
    }
    separability r;
    double intra = 0.0, inter = 0.0;
    if (data.size() < exhaustive_pair_limit) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            for (std::size_t j = i + 1; j < data.size(); ++j) {
                const double d = trace_distance_pure(data[i].state, data[j].state);
                if (data[i].label == data[j].label) {
                    intra += d;
                    ++r.intra_pairs;
                } else {
                    inter += d;
                    ++r.inter_pairs;
                }
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
        while (r.intra_pairs < sampled_pairs || r.inter_pairs < sampled_pairs) {
            const std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            const bool same = data[i].label == data[j].label;
            auto &count = same ? r.intra_pairs : r.inter_pairs;
            if (count >= sampled_pairs) continue;
            const double d = trace_distance_pure(data[i].state, data[j].state);
            (same ? intra : inter) += d;
            ++count;
        }
    }
    r.intra_mean = intra / static_cast<double>(r.intra_pairs);
    r.inter_mean = inter / static_cast<double>(r.inter_pairs);
    return r;
}

[[nodiscard]] inline separability separability_report(const circuit &encoder,
                                                      const sample_set &data,
                                                      std::uint64_t seed = 0) {
    const auto encoded = encode_all(embedding::from_circuit(encoder), data);
    return separability_report(encoded, seed);
}

} // namespace qembed
