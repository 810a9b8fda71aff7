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
 * @file subset.hpp
 * Binary class selection, resampling and seeded balanced capping.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "resize.hpp"
#include "sample.hpp"

namespace qembed {

struct dataset_spec {
    std::string name;
    std::size_t resolution = 8;
    int class_a = 0;
    int class_b = 1;
    std::optional<std::size_t> train_cap;
    double pixel_scale = 1.0;
    /// Fraction of train carved out as validation when no val split exists.
    double val_fraction = 0.1;
};

namespace detail {

inline sample_set select_binary(const sample_set &in, const dataset_spec &spec) {
    sample_set out;
    for (const auto &s : in) {
        if (s.label != spec.class_a && s.label != spec.class_b) continue;
        sample t;
        t.label = s.label == spec.class_a ? 0 : 1;
        t.features = resize(s.features, spec.resolution);
        if (spec.pixel_scale != 1.0) {
            for (auto &v : t.features) v *= spec.pixel_scale;
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Seeded choice of `k` indices from [0, n), returned in ascending order.
inline std::vector<std::size_t> choose_sorted(std::size_t n, std::size_t k, std::mt19937_64 &rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(k, n));
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace detail

/// Seeded subsample with the same number of samples from each class.
[[nodiscard]] inline sample_set balanced_cap(const sample_set &in, std::size_t cap,
                                             std::uint64_t seed) {
    if (cap % 2 != 0) {
        throw error(error_kind::config, "train_cap must be even for balanced capping");
    }
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < in.size(); ++i) {
        by_class[in[i].label == 0 ? 0 : 1].push_back(i);
    }
    const std::size_t per_class =
        std::min({cap / 2, by_class[0].size(), by_class[1].size()});
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> keep;
    for (const auto &members : by_class) {
        for (auto k : detail::choose_sorted(members.size(), per_class, rng)) {
            keep.push_back(members[k]);
        }
    }
    std::sort(keep.begin(), keep.end());
    sample_set out;
    out.reserve(keep.size());
    for (auto i : keep) out.push_back(in[i]);
    return out;
}

/**
 * @brief Restricts `data` to `spec.class_a` / `spec.class_b`, relabelled 0/1.
 *
 * Images are box-resized to `spec.resolution` and multiplied by
 * `spec.pixel_scale`. When `data.val` is empty a seeded `val_fraction` of
 * train becomes the validation split. `train_cap`, if set, then applies a
 * seeded balanced subsample to train. Test is never resampled.
 */
[[nodiscard]] inline dataset_splits binary_subset(const dataset_splits &data,
                                                  const dataset_spec &spec, std::uint64_t seed) {
    if (spec.class_a == spec.class_b) {
        throw error(error_kind::config, "class_a and class_b must differ");
    }
    if (spec.resolution < 2) {
        throw error(error_kind::config, "resolution must be >= 2");
    }
    dataset_splits out;
    out.train = detail::select_binary(data.train, spec);
    out.val = detail::select_binary(data.val, spec);
    out.test = detail::select_binary(data.test, spec);
    for (int cls : {0, 1}) {
        const bool present = std::any_of(out.train.begin(), out.train.end(),
                                         [&](const sample &s) { return s.label == cls; });
        if (!present) {
            throw error(error_kind::data,
                        spec.name + ": class " +
                            std::to_string(cls == 0 ? spec.class_a : spec.class_b) +
                            " missing from the training split");
        }
    }
    if (out.val.empty() && spec.val_fraction > 0.0) {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const auto n_val = static_cast<std::size_t>(
            std::llround(spec.val_fraction * static_cast<double>(out.train.size())));
        const auto val_idx = detail::choose_sorted(out.train.size(), n_val, rng);
        sample_set train;
        std::size_t next = 0;
        for (std::size_t i = 0; i < out.train.size(); ++i) {
            if (next < val_idx.size() && val_idx[next] == i) {
                out.val.push_back(std::move(out.train[i]));
                ++next;
            } else {
                train.push_back(std::move(out.train[i]));
            }
        }
        out.train = std::move(train);
    }
    if (spec.train_cap) {
        out.train = balanced_cap(out.train, *spec.train_cap, seed);
    }
    return out;
}

} // namespace qembed
