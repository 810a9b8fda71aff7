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
 * @file csv.hpp
 * `label,p0,p1,...` sample files.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "../error.hpp"
#include "sample.hpp"

namespace qembed {

namespace detail {

inline double parse_cell(std::string_view cell, std::size_t row, std::size_t col,
                         const std::string &path) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
        cell.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw error(error_kind::format, path + ": row " + std::to_string(row) + ", column " +
                                            std::to_string(col) + ": not a number '" +
                                            std::string(cell) + "'");
    }
    return v;
}

} // namespace detail

[[nodiscard]] inline sample_set parse_csv(std::istream &in, const std::string &path = "<stream>") {
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        throw error(error_kind::format, path + ": empty file");
    }
    if (line.rfind("label", 0) != 0) {
        throw error(error_kind::format, path + ": header must start with 'label'");
    }
    const std::size_t header_cols =
        static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (header_cols < 2) {
        throw error(error_kind::format, path + ": header has no pixel columns");
    }
    sample_set out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        sample s;
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell(line.data() + start,
                                        (comma == std::string::npos ? line.size() : comma) - start);
            const double v = detail::parse_cell(cell, row, col, path);
            if (col == 0) {
                s.label = static_cast<int>(v);
                if (static_cast<double>(s.label) != v) {
                    throw error(error_kind::format, path + ": row " + std::to_string(row) +
                                                        ", column 0: label is not an integer");
                }
            } else {
                s.features.push_back(v);
            }
            ++col;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != header_cols) {
            throw error(error_kind::format, path + ": row " + std::to_string(row) + " has " +
                                                std::to_string(col) + " cells, header has " +
                                                std::to_string(header_cols));
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw error(error_kind::format, path + ": no data rows");
    }
    return out;
}

[[nodiscard]] inline sample_set read_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw error(error_kind::data, "cannot open " + path);
    }
    return parse_csv(in, path);
}

inline void write_csv(std::ostream &out, const sample_set &samples) {
    if (samples.empty()) {
        throw error(error_kind::data, "write_csv: no samples");
    }
    out << "label";
    for (std::size_t i = 0; i < samples.front().features.size(); ++i) {
        out << ",p" << i;
    }
    out << '\n' << std::setprecision(17);
    for (const auto &s : samples) {
        out << s.label;
        for (double v : s.features) {
            out << ',' << v;
        }
        out << '\n';
    }
}

inline void write_csv(const std::string &path, const sample_set &samples) {
    std::ofstream out(path);
    if (!out) {
        throw error(error_kind::data, "cannot write " + path);
    }
    write_csv(out, samples);
}

} // namespace qembed
