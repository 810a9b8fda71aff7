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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "../classifier/train.hpp"
#include "../datasets/csv.hpp"
#include "../datasets/idx.hpp"
#include "../datasets/subset.hpp"
#include "../encoder/embedding.hpp"
#include "../encoder/greedy.hpp"

namespace qembed::cli {

namespace fs = std::filesystem;

enum class data_format { idx, csv };

/// Where a dataset lives on disk. Empty paths mean "split not provided".
struct data_source {
    data_format format = data_format::idx;
    std::string train_images, train_labels, test_images, test_labels; ///< idx
    std::string train_csv, val_csv, test_csv;                         ///< csv
    std::uint64_t seed = 0; ///< validation carving and train cap
};

struct run_config {
    dataset_spec dataset;
    data_source source;
    encoder_kind encoder = encoder_kind::greedy;
    greedy_config greedy;
    train_config training;
    std::size_t n_layers = 1;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string encoder_path; ///< prebuilt circuit; empty builds inline

    /// Qubit count implied by encoder kind and resolution.
    [[nodiscard]] std::size_t n_qubits() const {
        const std::size_t n_features = dataset.resolution * dataset.resolution;
        if (encoder == encoder_kind::angle) return n_features;
        return default_qubit_count(n_features);
    }

    void validate() const {
        if (dataset.resolution < 2) {
            throw error(error_kind::config, "dataset.resolution must be >= 2");
        }
        if (dataset.class_a == dataset.class_b) {
            throw error(error_kind::config, "dataset.class_a and dataset.class_b must differ");
        }
        if (dataset.train_cap && *dataset.train_cap % 2 != 0) {
            throw error(error_kind::config, "dataset.train_cap must be even");
        }
        if (n_qubits() > max_qubits) {
            throw error(error_kind::config, to_string(encoder) + " encoding of " +
                                                std::to_string(dataset.resolution) + "x" +
                                                std::to_string(dataset.resolution) + " needs " +
                                                std::to_string(n_qubits()) + " qubits; limit is " +
                                                std::to_string(max_qubits));
        }
        if (encoder == encoder_kind::greedy && greedy.n_qubits != 0 &&
            greedy.n_qubits != n_qubits()) {
            throw error(error_kind::config,
                        "encoder.n_qubits must equal ceil(log2(resolution^2)) = " +
                            std::to_string(n_qubits()));
        }
        if (n_layers < 1) throw error(error_kind::config, "n_layers must be >= 1");
        training.validate();
    }
};

namespace detail {

template <class T>
void read_opt(const nlohmann::json &j, const char *key, T &dst, const std::string &where) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw error(error_kind::config, where + "." + key + ": wrong type");
    }
}

inline std::string resolve_path(const std::string &p, const fs::path &base) {
    if (p.empty()) return p;
    const fs::path path(p);
    return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

inline void reject_unknown(const nlohmann::json &j, std::initializer_list<const char *> keys,
                           const std::string &where) {
    for (const auto &[k, _] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char *x) { return k == x; })) {
            throw error(error_kind::config, where + ": unknown key '" + k + "'");
        }
    }
}

inline const nlohmann::json &section(const nlohmann::json &j, const char *key) {
    static const nlohmann::json empty = nlohmann::json::object();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object()) throw error(error_kind::config, std::string(key) + " must be an object");
    return j.at(key);
}

} // namespace detail

/// Parses a run configuration; relative paths resolve against `base_dir`.
[[nodiscard]] inline run_config run_config_from_json(const nlohmann::json &j,
                                                     const fs::path &base_dir) {
    if (!j.is_object()) throw error(error_kind::config, "config must be a JSON object");
    detail::reject_unknown(j, {"dataset", "encoder", "train", "n_layers", "seed", "out"}, "config");
    run_config cfg;

    const auto &d = detail::section(j, "dataset");
    detail::reject_unknown(d,
                           {"name", "format", "train_images", "train_labels", "test_images",
                            "test_labels", "train", "val", "test", "resolution", "class_a",
                            "class_b", "train_cap", "pixel_scale", "val_fraction", "seed"},
                           "dataset");
    detail::read_opt(d, "name", cfg.dataset.name, "dataset");
    detail::read_opt(d, "resolution", cfg.dataset.resolution, "dataset");
    detail::read_opt(d, "class_a", cfg.dataset.class_a, "dataset");
    detail::read_opt(d, "class_b", cfg.dataset.class_b, "dataset");
    detail::read_opt(d, "pixel_scale", cfg.dataset.pixel_scale, "dataset");
    detail::read_opt(d, "val_fraction", cfg.dataset.val_fraction, "dataset");
    detail::read_opt(d, "seed", cfg.source.seed, "dataset");
    if (d.contains("train_cap") && !d.at("train_cap").is_null()) {
        std::size_t cap = 0;
        detail::read_opt(d, "train_cap", cap, "dataset");
        cfg.dataset.train_cap = cap;
    }
    std::string format = "idx";
    detail::read_opt(d, "format", format, "dataset");
    if (format == "idx") {
        cfg.source.format = data_format::idx;
    } else if (format == "csv") {
        cfg.source.format = data_format::csv;
    } else {
        throw error(error_kind::config, "dataset.format must be 'idx' or 'csv'");
    }
    auto path_of = [&](const char *key, std::string &dst) {
        detail::read_opt(d, key, dst, "dataset");
        dst = detail::resolve_path(dst, base_dir);
    };
    path_of("train_images", cfg.source.train_images);
    path_of("train_labels", cfg.source.train_labels);
    path_of("test_images", cfg.source.test_images);
    path_of("test_labels", cfg.source.test_labels);
    path_of("train", cfg.source.train_csv);
    path_of("val", cfg.source.val_csv);
    path_of("test", cfg.source.test_csv);

    const auto &e = detail::section(j, "encoder");
    detail::reject_unknown(e,
                           {"kind", "n_qubits", "w0", "w_damping", "margin", "loss", "max_gates",
                            "ties", "feature_scale", "circuit"},
                           "encoder");
    std::string kind = "greedy";
    detail::read_opt(e, "kind", kind, "encoder");
    try {
        cfg.encoder = encoder_kind_from_string(kind);
    } catch (const error &) {
        throw error(error_kind::config, "encoder.kind must be greedy, amplitude or angle");
    }
    detail::read_opt(e, "n_qubits", cfg.greedy.n_qubits, "encoder");
    detail::read_opt(e, "w0", cfg.greedy.w0, "encoder");
    detail::read_opt(e, "w_damping", cfg.greedy.w_damping, "encoder");
    detail::read_opt(e, "margin", cfg.greedy.margin, "encoder");
    detail::read_opt(e, "feature_scale", cfg.greedy.feature_scale, "encoder");
    if (e.contains("max_gates") && !e.at("max_gates").is_null()) {
        std::size_t m = 0;
        detail::read_opt(e, "max_gates", m, "encoder");
        cfg.greedy.max_gates = m;
    }
    std::string loss = "linear";
    detail::read_opt(e, "loss", loss, "encoder");
    if (loss == "linear") {
        cfg.greedy.loss = loss_kind::linear;
    } else if (loss == "hinge") {
        cfg.greedy.loss = loss_kind::hinge;
    } else {
        throw error(error_kind::config, "encoder.loss must be 'linear' or 'hinge'");
    }
    std::string ties = "first";
    detail::read_opt(e, "ties", ties, "encoder");
    if (ties == "first") {
        cfg.greedy.ties = tie_break::first;
    } else if (ties == "random") {
        cfg.greedy.ties = tie_break::random;
    } else {
        throw error(error_kind::config, "encoder.ties must be 'first' or 'random'");
    }
    detail::read_opt(e, "circuit", cfg.encoder_path, "encoder");
    cfg.encoder_path = detail::resolve_path(cfg.encoder_path, base_dir);

    const auto &t = detail::section(j, "train");
    detail::reject_unknown(t,
                           {"learning_rate", "batch_size", "epochs", "repetitions", "beta1",
                            "beta2", "eps"},
                           "train");
    detail::read_opt(t, "learning_rate", cfg.training.learning_rate, "train");
    detail::read_opt(t, "batch_size", cfg.training.batch_size, "train");
    detail::read_opt(t, "epochs", cfg.training.epochs, "train");
    detail::read_opt(t, "repetitions", cfg.training.repetitions, "train");
    detail::read_opt(t, "beta1", cfg.training.adam_beta1, "train");
    detail::read_opt(t, "beta2", cfg.training.adam_beta2, "train");
    detail::read_opt(t, "eps", cfg.training.adam_eps, "train");

    detail::read_opt(j, "n_layers", cfg.n_layers, "config");
    detail::read_opt(j, "seed", cfg.seed, "config");
    detail::read_opt(j, "out", cfg.out_dir, "config");
    cfg.out_dir = detail::resolve_path(cfg.out_dir, base_dir);
    cfg.greedy.seed = cfg.seed;
    cfg.training.seed = cfg.seed;
    return cfg;
}

[[nodiscard]] inline run_config load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw error(error_kind::config, "cannot open config " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &ex) {
        throw error(error_kind::config, path + ": " + ex.what());
    }
    auto cfg = run_config_from_json(j, fs::absolute(path).parent_path());
    cfg.validate();
    return cfg;
}

/// Reads the raw splits named by `src`; val stays empty when not provided.
[[nodiscard]] inline dataset_splits load_raw(const data_source &src) {
    dataset_splits raw;
    auto need = [](const std::string &p, const char *what) {
        if (p.empty()) throw error(error_kind::config, std::string("dataset.") + what + " is required");
        if (!fs::exists(p)) throw error(error_kind::data, "dataset file not found: " + p);
    };
    if (src.format == data_format::idx) {
        need(src.train_images, "train_images");
        need(src.train_labels, "train_labels");
        raw.train = read_idx_samples(src.train_images, src.train_labels);
        if (!src.test_images.empty()) {
            need(src.test_labels, "test_labels");
            need(src.test_images, "test_images");
            raw.test = read_idx_samples(src.test_images, src.test_labels);
        }
    } else {
        need(src.train_csv, "train");
        raw.train = read_csv(src.train_csv);
        if (!src.val_csv.empty()) {
            need(src.val_csv, "val");
            raw.val = read_csv(src.val_csv);
        }
        if (!src.test_csv.empty()) {
            need(src.test_csv, "test");
            raw.test = read_csv(src.test_csv);
        }
    }
    return raw;
}

[[nodiscard]] inline dataset_splits load_dataset(const run_config &cfg) {
    return binary_subset(load_raw(cfg.source), cfg.dataset, cfg.source.seed);
}

} // namespace qembed::cli
