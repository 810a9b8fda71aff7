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
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "../classifier/train.hpp"
#include "../encoder/baselines.hpp"
#include "../encoder/gate_counts.hpp"
#include "../encoder/separability.hpp"
#include "../encoder/triplets.hpp"
#include "../qsim/circuit_json.hpp"
#include "config.hpp"

namespace qembed::cli {

enum class split_kind { train, val, test };

[[nodiscard]] inline split_kind split_from_string(const std::string &s) {
    if (s == "train") return split_kind::train;
    if (s == "val") return split_kind::val;
    if (s == "test") return split_kind::test;
    throw error(error_kind::config, "split must be train, val or test");
}

/// Per-invocation overrides from the command line.
struct options {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> limit;
    std::optional<std::string> encoder_path;
    std::optional<std::string> checkpoint;
    split_kind split = split_kind::test;
};

inline void apply(run_config &cfg, const options &opt) {
    if (opt.out_dir) cfg.out_dir = *opt.out_dir;
    if (opt.seed) {
        cfg.seed = *opt.seed;
        cfg.greedy.seed = *opt.seed;
        cfg.training.seed = *opt.seed;
    }
    if (opt.encoder_path) cfg.encoder_path = *opt.encoder_path;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw error(error_kind::data, "cannot create " + cfg.out_dir + ": " + ec.message());
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

inline void write_text(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(error_kind::data, "cannot write " + path.string());
    out << text;
    if (!out) throw error(error_kind::data, "write failed: " + path.string());
}

inline void write_json(const fs::path &path, const nlohmann::json &j) {
    write_text(path, j.dump(2) + "\n");
}

inline nlohmann::json counts_json(const gate_counts &c) {
    return {{"cnot", c.cnot}, {"cz", c.cz}, {"rotations", c.rotations}, {"depth", c.depth}};
}

inline nlohmann::json metrics_json(const metrics &m) {
    nlohmann::json per_class = nlohmann::json::array();
    for (int k = 0; k < 2; ++k) {
        per_class.push_back({{"class", k},
                             {"precision", m.per_class[k].precision},
                             {"recall", m.per_class[k].recall},
                             {"f1", m.per_class[k].f1}});
    }
    return {{"accuracy", m.accuracy},
            {"per_class", per_class},
            {"confusion",
             {{m.confusion[0][0], m.confusion[0][1]}, {m.confusion[1][0], m.confusion[1][1]}}},
            {"total", m.total()}};
}

inline const sample_set &pick(const dataset_splits &d, split_kind s) {
    switch (s) {
    case split_kind::train:
        return d.train;
    case split_kind::val:
        return d.val;
    default:
        return d.test;
    }
}

inline sample_set limited(const sample_set &s, std::optional<std::size_t> limit) {
    if (!limit || *limit >= s.size()) return s;
    return sample_set(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(*limit));
}

inline void check_finite(double v, const char *what) {
    if (!std::isfinite(v)) throw error(error_kind::numeric, std::string(what) + " is not finite");
}

} // namespace detail

/// Result of the greedy construction plus its report rows.
struct built_encoder {
    greedy_result result;
    gate_counts counts;
    gate_counts mottonen;
};

[[nodiscard]] inline built_encoder build_greedy(const run_config &cfg, const sample_set &train) {
    const auto triplets = mine_triplets(train);
    auto result = greedy_build(triplets, cfg.greedy);
    for (const auto &s : result.steps) detail::check_finite(s.loss, "greedy loss");
    const auto counts = count_gates(result.encoder);
    return {std::move(result), counts, mottonen_reference_counts(cfg.n_qubits())};
}

/// The embedding used by train/evaluate/export-distances.
[[nodiscard]] inline embedding resolve_embedding(const run_config &cfg, const sample_set &train) {
    switch (cfg.encoder) {
    case encoder_kind::amplitude:
        return embedding::amplitude(cfg.n_qubits());
    case encoder_kind::angle:
        return embedding::from_circuit(angle_encode_circuit(cfg.dataset.resolution * cfg.dataset.resolution));
    case encoder_kind::greedy:
        break;
    }
    if (!cfg.encoder_path.empty()) {
        if (!fs::exists(cfg.encoder_path)) {
            throw error(error_kind::data, "encoder circuit not found: " + cfg.encoder_path);
        }
        auto c = load_circuit(cfg.encoder_path);
        if (c.n_qubits() != cfg.n_qubits()) {
            throw error(error_kind::config, "encoder circuit has " + std::to_string(c.n_qubits()) +
                                                " qubits; config implies " +
                                                std::to_string(cfg.n_qubits()));
        }
        const std::size_t n_features = cfg.dataset.resolution * cfg.dataset.resolution;
        if (c.feature_count() > n_features) {
            throw error(error_kind::config, "encoder circuit reads feature " +
                                                std::to_string(c.feature_count() - 1) +
                                                " but samples have " + std::to_string(n_features));
        }
        return embedding::from_circuit(std::move(c));
    }
    return embedding::from_circuit(build_greedy(cfg, train).result.encoder);
}

/**
 * @brief Greedy construction: writes circuit.json, loss_trace.csv and
 * gate_counts.json under the output directory and prints the counts next
 * to the Möttönen reference for the same qubit count.
 */
inline int cmd_build_encoder(run_config cfg, const options &opt, std::ostream &log) {
    apply(cfg, opt);
    if (cfg.encoder != encoder_kind::greedy) {
        throw error(error_kind::config, "build-encoder needs encoder.kind = greedy");
    }
    const auto data = load_dataset(cfg);
    const auto built = build_greedy(cfg, data.train);
    const fs::path out(cfg.out_dir);

    save_circuit(built.result.encoder, (out / "circuit.json").string());

    std::ostringstream trace;
    trace << "step,feature,chosen_gate,follow_up,loss,w\n";
    for (std::size_t k = 0; k < built.result.steps.size(); ++k) {
        const auto &s = built.result.steps[k];
        trace << k << ',' << s.feature << ",\"" << s.chosen.label() << "\",\""
              << (s.follow_up ? s.follow_up->label() : std::string{}) << "\","
              << detail::fmt(s.loss) << ',' << detail::fmt(s.w) << '\n';
    }
    detail::write_text(out / "loss_trace.csv", trace.str());

    detail::write_json(out / "gate_counts.json",
                       {{"n_qubits", cfg.n_qubits()},
                        {"greedy", detail::counts_json(built.counts)},
                        {"mottonen", detail::counts_json(built.mottonen)}});

    log << "encoder    qubits  cnot  cz  rotations  depth\n";
    auto row = [&](const char *name, const gate_counts &c) {
        log << std::left << std::setw(11) << name << std::setw(8) << cfg.n_qubits() << std::setw(6)
            << c.cnot << std::setw(4) << c.cz << std::setw(11) << c.rotations << c.depth << '\n';
    };
    row("greedy", built.counts);
    row("mottonen", built.mottonen);
    log << "wrote " << (out / "circuit.json").string() << '\n';
    return 0;
}

/// One seeded training run and its test metrics.
struct run_record {
    std::uint64_t seed = 0;
    train_result trained;
    metrics test;
};

struct experiment {
    std::vector<run_record> runs;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
};

/// `repetitions` trainings with seeds seed, seed+1, ...; evaluated on test.
[[nodiscard]] inline experiment run_experiment(const std::vector<encoded_sample> &train_set,
                                               const std::vector<encoded_sample> &val,
                                               const std::vector<encoded_sample> &test,
                                               std::size_t n_layers, train_config tc) {
    if (test.empty()) throw error(error_kind::data, "test split is empty");
    experiment ex;
    const std::uint64_t base = tc.seed;
    for (std::size_t r = 0; r < tc.repetitions; ++r) {
        tc.seed = base + r;
        auto trained = train(train_set, val, n_layers, tc);
        for (const auto &h : trained.history) detail::check_finite(h.train_loss, "training loss");
        auto m = evaluate(test, trained.model);
        ex.runs.push_back({tc.seed, std::move(trained), m});
    }
    for (const auto &r : ex.runs) ex.mean_accuracy += r.test.accuracy;
    ex.mean_accuracy /= static_cast<double>(ex.runs.size());
    for (const auto &r : ex.runs) {
        ex.std_accuracy += (r.test.accuracy - ex.mean_accuracy) * (r.test.accuracy - ex.mean_accuracy);
    }
    ex.std_accuracy = std::sqrt(ex.std_accuracy / static_cast<double>(ex.runs.size()));
    return ex;
}

[[nodiscard]] inline nlohmann::json checkpoint_json(const vqc_model &m, std::uint64_t seed,
                                                    encoder_kind kind) {
    return {{"n_qubits", m.n_qubits}, {"n_layers", m.n_layers},   {"theta", m.theta},
            {"readout_qubit", m.readout_qubit}, {"seed", seed}, {"encoder", to_string(kind)}};
}

[[nodiscard]] inline vqc_model load_checkpoint(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw error(error_kind::data, "cannot open checkpoint " + path);
    vqc_model m;
    try {
        const auto j = nlohmann::json::parse(in);
        m.n_qubits = j.at("n_qubits").get<std::size_t>();
        m.n_layers = j.at("n_layers").get<std::size_t>();
        m.theta = j.at("theta").get<std::vector<double>>();
        m.readout_qubit = j.at("readout_qubit").get<std::size_t>();
    } catch (const nlohmann::json::exception &ex) {
        throw error(error_kind::format, path + ": " + ex.what());
    }
    try {
        m.validate();
    } catch (const error &ex) {
        throw error(error_kind::format, path + ": " + ex.what());
    }
    return m;
}

/**
 * @brief Seeded training runs: run_<r>/checkpoint.json, history.csv and
 * metrics.json per repetition, plus summary.json with the mean test metrics.
 */
inline int cmd_train(run_config cfg, const options &opt, std::ostream &log) {
    apply(cfg, opt);
    const auto data = load_dataset(cfg);
    const auto emb = resolve_embedding(cfg, data.train);
    const auto tr = encode_all(emb, data.train);
    const auto va = encode_all(emb, data.val);
    const auto te = encode_all(emb, detail::limited(data.test, opt.limit));
    const auto ex = run_experiment(tr, va, te, cfg.n_layers, cfg.training);
    const fs::path out(cfg.out_dir);

    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t r = 0; r < ex.runs.size(); ++r) {
        const auto &run = ex.runs[r];
        const fs::path dir = out / ("run_" + std::to_string(r));
        detail::write_json(dir / "checkpoint.json",
                           checkpoint_json(run.trained.model, run.seed, cfg.encoder));
        std::ostringstream hist;
        hist << "epoch,train_loss,train_acc,val_acc\n";
        for (const auto &h : run.trained.history) {
            hist << h.epoch << ',' << detail::fmt(h.train_loss) << ',' << detail::fmt(h.train_acc)
                 << ',' << detail::fmt(h.val_acc) << '\n';
        }
        detail::write_text(dir / "history.csv", hist.str());
        detail::write_json(dir / "metrics.json", detail::metrics_json(run.test));
        runs.push_back({{"seed", run.seed},
                        {"best_epoch", run.trained.best_epoch},
                        {"test_accuracy", run.test.accuracy}});
        log << "run " << r << " seed " << run.seed << " best epoch " << run.trained.best_epoch
            << " test accuracy " << std::fixed << std::setprecision(4) << run.test.accuracy
            << std::defaultfloat << '\n';
    }
    detail::write_json(out / "summary.json",
                       {{"dataset", cfg.dataset.name},
                        {"encoder", to_string(cfg.encoder)},
                        {"n_qubits", cfg.n_qubits()},
                        {"n_layers", cfg.n_layers},
                        {"train_size", tr.size()},
                        {"val_size", va.size()},
                        {"test_size", te.size()},
                        {"runs", runs},
                        {"mean_test_accuracy", ex.mean_accuracy},
                        {"std_test_accuracy", ex.std_accuracy}});
    log << "mean test accuracy " << std::fixed << std::setprecision(4) << ex.mean_accuracy
        << " +- " << ex.std_accuracy << std::defaultfloat << '\n';
    return 0;
}

/// Metrics of a checkpoint on the chosen split; writes metrics.json.
inline int cmd_evaluate(run_config cfg, const options &opt, std::ostream &log) {
    apply(cfg, opt);
    if (!opt.checkpoint) throw error(error_kind::config, "evaluate needs --checkpoint");
    const auto model = load_checkpoint(*opt.checkpoint);
    if (model.n_qubits != cfg.n_qubits()) {
        throw error(error_kind::config, "checkpoint has " + std::to_string(model.n_qubits) +
                                            " qubits; config implies " +
                                            std::to_string(cfg.n_qubits()));
    }
    const auto data = load_dataset(cfg);
    const auto split = detail::limited(detail::pick(data, opt.split), opt.limit);
    if (split.empty()) throw error(error_kind::data, "evaluate: split is empty");
    const auto emb = resolve_embedding(cfg, data.train);
    const auto m = evaluate(encode_all(emb, split), model);
    const auto j = detail::metrics_json(m);
    detail::write_json(fs::path(cfg.out_dir) / "metrics.json", j);
    log << j.dump(2) << '\n';
    return 0;
}

/// Symmetric trace-distance matrix with labels, plus the encoded states.
struct distance_table {
    std::vector<int> labels;
    std::vector<std::vector<double>> d;
};

[[nodiscard]] inline distance_table pairwise_distances(std::span<const encoded_sample> states) {
    distance_table t;
    const std::size_t n = states.size();
    t.d.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        t.labels.push_back(states[i].label);
        for (std::size_t j = i + 1; j < n; ++j) {
            t.d[i][j] = t.d[j][i] = trace_distance_pure(states[i].state, states[j].state);
        }
    }
    return t;
}

inline int cmd_export_distances(run_config cfg, const options &opt, std::ostream &log) {
    apply(cfg, opt);
    const auto data = load_dataset(cfg);
    const auto split = detail::limited(detail::pick(data, opt.split), opt.limit);
    const auto emb = resolve_embedding(cfg, data.train);
    const auto states = encode_all(emb, split);
    const auto table = pairwise_distances(states);
    const fs::path out(cfg.out_dir);

    std::ostringstream dist;
    dist << "label";
    for (std::size_t j = 0; j < states.size(); ++j) dist << ",d" << j;
    dist << '\n';
    for (std::size_t i = 0; i < states.size(); ++i) {
        dist << table.labels[i];
        for (double v : table.d[i]) dist << ',' << detail::fmt(v);
        dist << '\n';
    }
    detail::write_text(out / "distances.csv", dist.str());

    std::ostringstream dump;
    dump << "label";
    const std::size_t dim = states.empty() ? 0 : states.front().state.dimension();
    for (std::size_t k = 0; k < dim; ++k) dump << ",re" << k << ",im" << k;
    dump << '\n';
    for (const auto &s : states) {
        dump << s.label;
        for (std::size_t k = 0; k < dim; ++k) {
            dump << ',' << detail::fmt(s.state[k].real()) << ',' << detail::fmt(s.state[k].imag());
        }
        dump << '\n';
    }
    detail::write_text(out / "states.csv", dump.str());
    log << "wrote " << states.size() << "x" << states.size() << " distances to "
        << (out / "distances.csv").string() << '\n';
    return 0;
}

/// One cell of the encoder x depth comparison.
struct compare_row {
    encoder_kind encoder = encoder_kind::greedy;
    std::size_t n_layers = 1;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    std::vector<double> accuracies;
};

struct comparison {
    gate_counts greedy_counts;
    gate_counts mottonen_counts;
    separability greedy_separability;
    std::vector<compare_row> rows;
};

/// Greedy and amplitude encodings, each with 1 and 2 VQC layers.
[[nodiscard]] inline comparison run_comparison(const run_config &cfg, const dataset_splits &data,
                                               std::optional<std::size_t> limit = std::nullopt) {
    comparison cmp;
    auto greedy_cfg = cfg;
    greedy_cfg.encoder = encoder_kind::greedy;
    const auto greedy = resolve_embedding(greedy_cfg, data.train);
    cmp.greedy_counts = count_gates(*greedy.as_circuit());
    cmp.mottonen_counts = mottonen_reference_counts(cfg.n_qubits());
    cmp.greedy_separability = separability_report(*greedy.as_circuit(), data.train, cfg.seed);
    const auto test = detail::limited(data.test, limit);
    for (auto kind : {encoder_kind::greedy, encoder_kind::amplitude}) {
        const auto emb = kind == encoder_kind::greedy ? greedy : embedding::amplitude(cfg.n_qubits());
        const auto tr = encode_all(emb, data.train);
        const auto va = encode_all(emb, data.val);
        const auto te = encode_all(emb, test);
        for (std::size_t layers : {std::size_t{1}, std::size_t{2}}) {
            const auto ex = run_experiment(tr, va, te, layers, cfg.training);
            compare_row row{kind, layers, ex.mean_accuracy, ex.std_accuracy, {}};
            for (const auto &r : ex.runs) row.accuracies.push_back(r.test.accuracy);
            cmp.rows.push_back(std::move(row));
        }
    }
    return cmp;
}

inline int cmd_compare(run_config cfg, const options &opt, std::ostream &log) {
    apply(cfg, opt);
    if (cfg.encoder == encoder_kind::angle) {
        throw error(error_kind::config, "compare covers greedy and amplitude encodings");
    }
    const auto data = load_dataset(cfg);
    const auto cmp = run_comparison(cfg, data, opt.limit);
    const fs::path out(cfg.out_dir);

    std::ostringstream csv;
    csv << "encoder,n_layers,mean_accuracy,std_accuracy\n";
    nlohmann::json rows = nlohmann::json::array();
    log << "dataset " << cfg.dataset.name << ", " << cfg.dataset.resolution << "x"
        << cfg.dataset.resolution << ", " << cfg.n_qubits() << " qubits, "
        << cfg.training.repetitions << " seeds\n";
    log << "encoder    layers  accuracy\n";
    for (const auto &r : cmp.rows) {
        csv << to_string(r.encoder) << ',' << r.n_layers << ',' << detail::fmt(r.mean_accuracy)
            << ',' << detail::fmt(r.std_accuracy) << '\n';
        rows.push_back({{"encoder", to_string(r.encoder)},
                        {"n_layers", r.n_layers},
                        {"mean_accuracy", r.mean_accuracy},
                        {"std_accuracy", r.std_accuracy},
                        {"accuracies", r.accuracies}});
        log << std::left << std::setw(11) << to_string(r.encoder) << std::setw(8) << r.n_layers
            << std::fixed << std::setprecision(1) << 100.0 * r.mean_accuracy << "% +- "
            << 100.0 * r.std_accuracy << std::defaultfloat << '\n';
    }
    log << "greedy gates: " << cmp.greedy_counts.cnot + cmp.greedy_counts.cz << " entangling, "
        << cmp.greedy_counts.rotations << " rotations; mottonen: " << cmp.mottonen_counts.cnot
        << " CNOT, " << cmp.mottonen_counts.rotations << " rotations\n";
    detail::write_text(out / "compare.csv", csv.str());
    detail::write_json(out / "compare.json",
                       {{"dataset", cfg.dataset.name},
                        {"resolution", cfg.dataset.resolution},
                        {"n_qubits", cfg.n_qubits()},
                        {"rows", rows},
                        {"greedy_counts", detail::counts_json(cmp.greedy_counts)},
                        {"mottonen_counts", detail::counts_json(cmp.mottonen_counts)},
                        {"separability",
                         {{"intra_mean", cmp.greedy_separability.intra_mean},
                          {"inter_mean", cmp.greedy_separability.inter_mean}}}});
    return 0;
}

} // namespace qembed::cli
