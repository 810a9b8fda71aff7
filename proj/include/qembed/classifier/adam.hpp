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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "../error.hpp"

namespace qembed {

struct adam_params {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct adam_state {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t step = 0;
};

/// One bias-corrected Adam update of `theta` in place.
inline void adam_step(adam_state &state, std::vector<double> &theta, std::span<const double> grad,
                      const adam_params &p) {
    if (grad.size() != theta.size()) {
        throw error(error_kind::dimension_mismatch, "adam_step: gradient/parameter length mismatch");
    }
    if (state.m.empty()) {
        state.m.assign(theta.size(), 0.0);
        state.v.assign(theta.size(), 0.0);
    }
    if (state.m.size() != theta.size()) {
        throw error(error_kind::dimension_mismatch, "adam_step: optimizer state length mismatch");
    }
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(p.beta1, t);
    const double c2 = 1.0 - std::pow(p.beta2, t);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = p.beta1 * state.m[i] + (1.0 - p.beta1) * grad[i];
        state.v[i] = p.beta2 * state.v[i] + (1.0 - p.beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        theta[i] -= p.learning_rate * m_hat / (std::sqrt(v_hat) + p.eps);
    }
}

} // namespace qembed
