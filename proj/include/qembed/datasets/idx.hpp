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
 * @file idx.hpp
 * Reader for the big-endian IDX container used by MNIST
 * (IDX3 unsigned-byte images, IDX1 unsigned-byte labels).
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "../error.hpp"
#include "sample.hpp"

namespace qembed {

/// A decoded IDX tensor of unsigned bytes.
struct idx_tensor {
    std::vector<std::uint32_t> dims;
    std::vector<std::uint8_t> data;
};

namespace detail {

inline std::uint32_t read_be32(const std::vector<std::uint8_t> &buf, std::size_t offset,
                               const std::string &path) {
    if (offset + 4 > buf.size()) {
        throw error(error_kind::format, path + ": truncated header at byte offset " +
                                            std::to_string(offset) + " (file has " +
                                            std::to_string(buf.size()) + " bytes)");
    }
    return (std::uint32_t{buf[offset]} << 24) | (std::uint32_t{buf[offset + 1]} << 16) |
           (std::uint32_t{buf[offset + 2]} << 8) | std::uint32_t{buf[offset + 3]};
}

} // namespace detail

[[nodiscard]] inline idx_tensor parse_idx(const std::vector<std::uint8_t> &buf,
                                          const std::string &path = "<memory>") {
    if (buf.size() < 4) {
        throw error(error_kind::format, path + ": truncated header at byte offset 0 (file has " +
                                            std::to_string(buf.size()) + " bytes)");
    }
    if (buf[0] != 0 || buf[1] != 0) {
        throw error(error_kind::format, path + ": bad magic at byte offset 0");
    }
    if (buf[2] != 0x08) {
        throw error(error_kind::format,
                    path + ": unsupported element type " + std::to_string(buf[2]) +
                        " at byte offset 2 (only unsigned byte is supported)");
    }
    const std::size_t rank = buf[3];
    if (rank == 0) {
        throw error(error_kind::format, path + ": zero rank at byte offset 3");
    }
    idx_tensor t;
    std::size_t count = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        t.dims.push_back(detail::read_be32(buf, 4 + 4 * i, path));
        count *= t.dims.back();
    }
    const std::size_t header = 4 + 4 * rank;
    if (buf.size() != header + count) {
        throw error(error_kind::format,
                    path + ": expected " + std::to_string(header + count) + " bytes, found " +
                        std::to_string(buf.size()) + " (payload starts at byte offset " +
                        std::to_string(header) + ")");
    }
    t.data.assign(buf.begin() + static_cast<std::ptrdiff_t>(header), buf.end());
    return t;
}

[[nodiscard]] inline idx_tensor read_idx(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(error_kind::data, "cannot open " + path);
    }
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    return parse_idx(buf, path);
}

/// Pairs an IDX3 image file with an IDX1 label file.
[[nodiscard]] inline sample_set read_idx_samples(const std::string &images_path,
                                                 const std::string &labels_path) {
    const auto images = read_idx(images_path);
    const auto labels = read_idx(labels_path);
    if (images.dims.size() != 3) {
        throw error(error_kind::format, images_path + ": expected a rank-3 image tensor");
    }
    if (labels.dims.size() != 1) {
        throw error(error_kind::format, labels_path + ": expected a rank-1 label tensor");
    }
    if (images.dims[0] != labels.dims[0]) {
        throw error(error_kind::format, "image count " + std::to_string(images.dims[0]) +
                                            " differs from label count " +
                                            std::to_string(labels.dims[0]));
    }
    const std::size_t pixels = std::size_t{images.dims[1]} * images.dims[2];
    sample_set out(images.dims[0]);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto *px = images.data.data() + i * pixels;
        out[i].features.assign(px, px + pixels);
        out[i].label = labels.data[i];
    }
    return out;
}

/// Serializes unsigned-byte tensors; used to build fixtures.
[[nodiscard]] inline std::vector<std::uint8_t> encode_idx(const idx_tensor &t) {
    std::vector<std::uint8_t> buf{0, 0, 0x08, static_cast<std::uint8_t>(t.dims.size())};
    for (auto d : t.dims) {
        for (int shift = 24; shift >= 0; shift -= 8) {
            buf.push_back(static_cast<std::uint8_t>(d >> shift));
        }
    }
    buf.insert(buf.end(), t.data.begin(), t.data.end());
    return buf;
}

} // namespace qembed
