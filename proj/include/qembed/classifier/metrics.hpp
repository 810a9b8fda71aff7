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
 * @file metrics.hpp
 * Binary classification metrics. Precision, recall and f1 are 0 whenever
 * their denominator is 0.
 */
#pragma once

#include <array>
#include <span>

#include "../error.hpp"

namespace qembed {

/// confusion[actual][predicted]
using confusion_matrix = std::array<std::array<std::size_t, 2>, 2>;

struct class_metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct metrics {
    double accuracy = 0.0;
    std::array<class_metrics, 2> per_class{};
    confusion_matrix confusion{};

    [[nodiscard]] std::size_t total() const noexcept {
        return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
    }
};

namespace detail {
inline double safe_ratio(double num, double den) noexcept { return den == 0.0 ? 0.0 : num / den; }
} // namespace detail

[[nodiscard]] inline metrics metrics_from_confusion(const confusion_matrix &conf) {
    metrics m;
    m.confusion = conf;
    const auto total = static_cast<double>(m.total());
    if (total == 0.0) {
        throw error(error_kind::data, "metrics: empty confusion matrix");
    }
    m.accuracy = static_cast<double>(conf[0][0] + conf[1][1]) / total;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto tp = static_cast<double>(conf[c][c]);
        const auto fp = static_cast<double>(conf[1 - c][c]);
        const auto fn = static_cast<double>(conf[c][1 - c]);
        auto &cm = m.per_class[c];
        cm.precision = detail::safe_ratio(tp, tp + fp);
        cm.recall = detail::safe_ratio(tp, tp + fn);
        cm.f1 = detail::safe_ratio(2.0 * cm.precision * cm.recall, cm.precision + cm.recall);
    }
    return m;
}

[[nodiscard]] inline metrics metrics_from_predictions(std::span<const int> labels,
                                                      std::span<const int> predictions) {
    if (labels.size() != predictions.size()) {
        throw error(error_kind::dimension_mismatch, "metrics: label/prediction count mismatch");
    }
    confusion_matrix conf{};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] > 1 || predictions[i] < 0 || predictions[i] > 1) {
            throw error(error_kind::data, "metrics: labels must be 0 or 1");
        }
        ++conf[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(predictions[i])];
    }
    return metrics_from_confusion(conf);
}

} // namespace qembed
