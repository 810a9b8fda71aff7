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
 * @file triplets.hpp
 * Hard triplet mining and the triplet loss.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "../datasets/sample.hpp"
#include "../error.hpp"

namespace qembed {

/// (anchor, positive, negative) for the ordered class pair (class_a, class_b).
struct triplet {
    std::vector<double> anchor;
    std::vector<double> positive;
    std::vector<double> negative;
    int class_a = 0;
    int class_b = 1;

    [[nodiscard]] std::size_t n_features() const noexcept { return anchor.size(); }
};

/// Element-wise median; even counts take the mean of the two middle values.
[[nodiscard]] inline std::vector<double>
coordwise_median(std::span<const std::vector<double>> vectors) {
    if (vectors.empty()) {
        throw error(error_kind::invalid_argument, "coordwise_median: empty input");
    }
    const std::size_t dim = vectors.front().size();
    for (const auto &v : vectors) {
        if (v.size() != dim) {
            throw error(error_kind::dimension_mismatch, "coordwise_median: ragged input");
        }
    }
    const std::size_t n = vectors.size();
    std::vector<double> column(n), out(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < n; ++i) column[i] = vectors[i][k];
        std::sort(column.begin(), column.end());
        out[k] = n % 2 == 1 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    }
    return out;
}

[[nodiscard]] inline double euclidean_distance(std::span<const double> a,
                                               std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

/**
 * @brief One hard triplet per ordered pair of distinct classes.
 *
 * The anchor is the coordinate-wise median of class a, the positive the
 * class-a sample farthest from it and the negative the class-b sample
 * nearest to it (Euclidean pixel distance, first index on ties).
 * `classes` defaults to every label present, in ascending order.
 */
[[nodiscard]] inline std::vector<triplet> mine_triplets(const sample_set &data,
                                                        std::vector<int> classes = {}) {
    if (classes.empty()) {
        std::set<int> seen;
        for (const auto &s : data) seen.insert(s.label);
        classes.assign(seen.begin(), seen.end());
    }
    std::vector<std::vector<std::vector<double>>> members(classes.size());
    for (const auto &s : data) {
        const auto it = std::find(classes.begin(), classes.end(), s.label);
        if (it != classes.end()) {
            members[static_cast<std::size_t>(it - classes.begin())].push_back(s.features);
        }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (members[c].empty()) {
            throw error(error_kind::data,
                        "mine_triplets: class " + std::to_string(classes[c]) + " has no samples");
        }
    }
    if (classes.size() < 2) {
        throw error(error_kind::data, "mine_triplets: need at least two classes");
    }
    std::vector<triplet> out;
    for (std::size_t a = 0; a < classes.size(); ++a) {
        const auto anchor = coordwise_median(members[a]);
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < members[a].size(); ++i) {
            const double d = euclidean_distance(anchor, members[a][i]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        for (std::size_t b = 0; b < classes.size(); ++b) {
            if (a == b) continue;
            std::size_t near = 0;
            double near_d = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < members[b].size(); ++i) {
                const double d = euclidean_distance(anchor, members[b][i]);
                if (d < near_d) {
                    near_d = d;
                    near = i;
                }
            }
            out.push_back({anchor, members[a][far], members[b][near], classes[a], classes[b]});
        }
    }
    return out;
}

enum class loss_kind { hinge, linear };

/// hinge: max(0, w*dAP - dAN + m); linear: -(dAN - w*dAP).
[[nodiscard]] constexpr double triplet_loss(double d_ap, double d_an, double w, double margin,
                                            loss_kind kind) noexcept {
    if (kind == loss_kind::hinge) {
        const double v = w * d_ap - d_an + margin;
        return v > 0.0 ? v : 0.0;
    }
    return -(d_an - w * d_ap);
}

} // namespace qembed
