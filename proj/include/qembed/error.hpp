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
 * @file error.hpp
 * Exception type shared by every qembed module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qembed {

enum class error_kind {
    invalid_argument,
    invalid_circuit,
    dimension_mismatch,
    format,
    config,
    data,
    numeric,
};

class error : public std::runtime_error {
  public:
    error(error_kind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] error_kind kind() const noexcept { return kind_; }

  private:
    error_kind kind_;
};

/// Process exit code for an error kind: 1 usage/config, 2 data, 3 numeric.
[[nodiscard]] inline int exit_code(error_kind kind) noexcept {
    switch (kind) {
    case error_kind::format:
    case error_kind::data:
        return 2;
    case error_kind::numeric:
        return 3;
    default:
        return 1;
    }
}

} // namespace qembed
