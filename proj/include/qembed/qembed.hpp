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
 * @file qembed.hpp
 * Umbrella header.
 */
#pragma once

#include "error.hpp"

#include "qsim/circuit.hpp"
#include "qsim/circuit_json.hpp"
#include "qsim/distance.hpp"
#include "qsim/simulator.hpp"
#include "qsim/state.hpp"

#include "datasets/csv.hpp"
#include "datasets/idx.hpp"
#include "datasets/resize.hpp"
#include "datasets/sample.hpp"
#include "datasets/subset.hpp"

#include "encoder/baselines.hpp"
#include "encoder/embedding.hpp"
#include "encoder/gate_counts.hpp"
#include "encoder/greedy.hpp"
#include "encoder/separability.hpp"
#include "encoder/triplets.hpp"

#include "classifier/adam.hpp"
#include "classifier/metrics.hpp"
#include "classifier/train.hpp"
#include "classifier/vqc.hpp"
