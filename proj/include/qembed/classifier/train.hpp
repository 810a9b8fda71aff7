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
 * @file train.hpp
 * Mini-batch Adam training of the variational classifier on pre-encoded
 * states, and evaluation.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "adam.hpp"
#include "metrics.hpp"
#include "vqc.hpp"

namespace qembed {

struct train_config {
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
    std::size_t epochs = 30;
    std::uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t repetitions = 5;

    void validate() const {
        if (!(learning_rate > 0.0) || batch_size < 1 || epochs < 1 || repetitions < 1) {
            throw error(error_kind::config,
                        "train_config: need learning_rate > 0, batch_size >= 1, epochs >= 1, "
                        "repetitions >= 1");
        }
    }
};

struct epoch_record {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_acc = 0.0; ///< 0 when no validation set was given
};

struct train_result {
    vqc_model model;
    std::vector<epoch_record> history;
    std::size_t best_epoch = 0;
};

[[nodiscard]] inline double accuracy(std::span<const encoded_sample> data, const vqc_model &model) {
    if (data.empty()) return 0.0;
    const circuit ansatz = vqc_circuit(model.n_qubits, model.n_layers);
    std::size_t correct = 0;
    for (const auto &s : data) {
        if (predict(forward_state(s.state, ansatz, model.theta, model.readout_qubit)) == s.label) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

/**
 * @brief Trains a fresh `n_layers` model.
 *
 * theta starts uniform in (-pi, pi) from `cfg.seed`; each epoch reshuffles
 * the training set with the same generator. History records full-set
 * training loss/accuracy and validation accuracy after every epoch. The
 * returned model is the one with the best validation accuracy (earliest
 * on ties), or the final one when `val` is empty.
 */
[[nodiscard]] inline train_result train(std::span<const encoded_sample> train_set,
                                        std::span<const encoded_sample> val, std::size_t n_layers,
                                        const train_config &cfg,
                                        std::size_t readout_qubit = static_cast<std::size_t>(-1)) {
    cfg.validate();
    if (train_set.empty()) {
        throw error(error_kind::data, "train: empty training set");
    }
    const std::size_t n_qubits = train_set.front().state.n_qubits();
    vqc_model model = vqc_model::zeros(n_qubits, n_layers);
    if (readout_qubit != static_cast<std::size_t>(-1)) model.readout_qubit = readout_qubit;
    model.validate();

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> init(-std::numbers::pi, std::numbers::pi);
    for (auto &t : model.theta) t = init(rng);

    const adam_params adam{cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps};
    adam_state opt;
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<encoded_sample> batch;

    train_result result{model, {}, 0};
    double best_val = -1.0;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            batch.clear();
            for (std::size_t i = start; i < stop; ++i) batch.push_back(train_set[order[i]]);
            const auto grad = gradient(batch, model);
            adam_step(opt, model.theta, grad, adam);
        }
        epoch_record rec{epoch, mean_loss(train_set, model), accuracy(train_set, model),
                         accuracy(val, model)};
        result.history.push_back(rec);
        if (val.empty() || rec.val_acc > best_val) {
            best_val = rec.val_acc;
            result.model = model;
            result.best_epoch = epoch;
        }
    }
    return result;
}

[[nodiscard]] inline metrics evaluate(std::span<const encoded_sample> test, const vqc_model &model) {
    if (test.empty()) {
        throw error(error_kind::data, "evaluate: empty test set");
    }
    model.validate();
    const circuit ansatz = vqc_circuit(model.n_qubits, model.n_layers);
    std::vector<int> labels, preds;
    labels.reserve(test.size());
    preds.reserve(test.size());
    for (const auto &s : test) {
        labels.push_back(s.label);
        preds.push_back(predict(forward_state(s.state, ansatz, model.theta, model.readout_qubit)));
    }
    return metrics_from_predictions(labels, preds);
}

/// Evaluates with a circuit embedding applied to raw samples.
[[nodiscard]] inline metrics evaluate(const circuit &encoder, const vqc_model &model,
                                      const sample_set &test) {
    if (encoder.n_qubits() != model.n_qubits) {
        throw error(error_kind::dimension_mismatch, "evaluate: embedding/model qubit mismatch");
    }
    return evaluate(encode_all(embedding::from_circuit(encoder), test), model);
}

} // namespace qembed
