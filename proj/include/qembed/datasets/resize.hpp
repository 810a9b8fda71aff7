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
 * @file resize.hpp
 * Area-averaging (box filter) resampling of square grayscale images.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "../error.hpp"

namespace qembed {

/// Side length of a square image with `pixels` entries.
[[nodiscard]] inline std::size_t square_side(std::size_t pixels) {
    auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(pixels))));
    if (side * side != pixels) {
        throw error(error_kind::data,
                    "image with " + std::to_string(pixels) + " pixels is not square");
    }
    return side;
}

/**
 * @brief Resizes a row-major `side x side` image to `d x d`.
 *
 * Each output cell is the area-weighted mean of the source pixels it
 * covers. Overlaps are computed on an integer grid, so the result is
 * deterministic and resizing to the source size returns the input.
 */
[[nodiscard]] inline std::vector<double> resize(std::span<const double> image, std::size_t d) {
    if (d == 0) {
        throw error(error_kind::invalid_argument, "resize: target size must be >= 1");
    }
    const std::size_t d0 = square_side(image.size());
    if (d == d0) {
        return {image.begin(), image.end()};
    }
    // Source pixel i spans [i*d, (i+1)*d); output cell r spans [r*d0, (r+1)*d0).
    auto overlap = [&](std::size_t r, std::size_t i) -> std::size_t {
        const std::size_t lo = std::max(r * d0, i * d);
        const std::size_t hi = std::min((r + 1) * d0, (i + 1) * d);
        return hi > lo ? hi - lo : 0;
    };
    const double area = static_cast<double>(d0) * static_cast<double>(d0);
    std::vector<double> out(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t i_lo = r * d0 / d, i_hi = std::min(d0, ((r + 1) * d0 + d - 1) / d);
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t j_lo = c * d0 / d, j_hi = std::min(d0, ((c + 1) * d0 + d - 1) / d);
            double acc = 0.0;
            double lo = image[i_lo * d0 + j_lo], hi = lo;
            for (std::size_t i = i_lo; i < i_hi; ++i) {
                const auto wr = overlap(r, i);
                if (wr == 0) continue;
                for (std::size_t j = j_lo; j < j_hi; ++j) {
                    const auto wc = overlap(c, j);
                    if (wc == 0) continue;
                    const double v = image[i * d0 + j];
                    acc += static_cast<double>(wr * wc) * v;
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            out[r * d + c] = std::clamp(acc / area, lo, hi);
        }
    }
    return out;
}

} // namespace qembed
