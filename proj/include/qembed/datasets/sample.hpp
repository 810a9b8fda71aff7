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

#include <cstddef>
#include <vector>

namespace qembed {

/// One image flattened row-major, with its class id.
struct sample {
    std::vector<double> features;
    int label = 0;
};

using sample_set = std::vector<sample>;

/// Train/validation/test partition. `val` may be empty when the source
/// publishes no validation split.
struct dataset_splits {
    sample_set train;
    sample_set val;
    sample_set test;
};

} // namespace qembed
