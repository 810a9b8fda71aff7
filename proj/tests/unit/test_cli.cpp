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

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <qembed/cli/commands.hpp>

using namespace qembed;
using namespace qembed::cli;
using Catch::Matchers::WithinAbs;

namespace {

const fs::path data_dir = QEMBED_DATA_DIR;
const fs::path config_dir = QEMBED_CONFIG_DIR;
const std::string cli_path = QEMBED_CLI_PATH;

struct temp_dir {
    fs::path path;
    explicit temp_dir(const std::string &name)
        : path(fs::temp_directory_path() / ("qembed_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~temp_dir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json small_config(const fs::path &out) {
    return {{"dataset",
             {{"name", "mnist01"},
              {"train_images", (data_dir / "mnist01/train-images-idx3-ubyte").string()},
              {"train_labels", (data_dir / "mnist01/train-labels-idx1-ubyte").string()},
              {"test_images", (data_dir / "mnist01/t10k-images-idx3-ubyte").string()},
              {"test_labels", (data_dir / "mnist01/t10k-labels-idx1-ubyte").string()},
              {"resolution", 4},
              {"train_cap", 100},
              {"pixel_scale", 1.0 / 255.0}}},
            {"encoder", {{"kind", "greedy"}}},
            {"train", {{"epochs", 2}, {"repetitions", 2}}},
            {"n_layers", 1},
            {"out", out.string()}};
}

fs::path write_config(const fs::path &dir, const nlohmann::json &j, const std::string &name = "run.json") {
    const auto p = dir / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

int run_cli(const std::string &args) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <class Fn> error_kind error_kind_of(Fn &&fn) {
    try {
        fn();
    } catch (const error &e) {
        return e.kind();
    }
    return error_kind::invalid_argument;
}

} // namespace

TEST_CASE("shipped presets parse and imply the expected qubit counts", "[config]") {
    std::size_t n = 0;
    for (const auto &entry : fs::recursive_directory_iterator(config_dir)) {
        if (entry.path().extension() != ".json") continue;
        const auto cfg = load_run_config(entry.path().string());
        const std::map<std::size_t, std::size_t> expected{{8, 6}, {10, 7}, {12, 8}, {16, 8}, {28, 10}};
        CHECK(cfg.n_qubits() == expected.at(cfg.dataset.resolution));
        CHECK(cfg.training.learning_rate == 0.01);
        CHECK(cfg.training.batch_size == 32);
        CHECK(fs::path(cfg.out_dir).is_absolute());
        ++n;
    }
    CHECK(n == 16 + 48);
}

TEST_CASE("config paths resolve against the config directory", "[config]") {
    const nlohmann::json j = {{"dataset", {{"train_images", "sub/a.idx"}, {"train", "/abs/b.csv"}}},
                              {"out", "results"}};
    const auto cfg = run_config_from_json(j, "/base/dir");
    CHECK(cfg.source.train_images == "/base/dir/sub/a.idx");
    CHECK(cfg.source.train_csv == "/abs/b.csv");
    CHECK(cfg.out_dir == "/base/dir/results");
    CHECK(cfg.encoder == encoder_kind::greedy);
    CHECK(cfg.n_layers == 1);
}

TEST_CASE("config errors", "[config][errors]") {
    auto kind = [](const nlohmann::json &j) {
        return error_kind_of([&] { run_config_from_json(j, "/").validate(); });
    };
    CHECK(kind({{"bogus", 1}}) == error_kind::config);
    CHECK(kind({{"dataset", {{"resolution", "eight"}}}}) == error_kind::config);
    CHECK(kind({{"dataset", {{"format", "npz"}}}}) == error_kind::config);
    CHECK(kind({{"dataset", {{"train_cap", 3}}}}) == error_kind::config);
    CHECK(kind({{"dataset", {{"class_a", 1}, {"class_b", 1}}}}) == error_kind::config);
    CHECK(kind({{"encoder", {{"kind", "iqp"}}}}) == error_kind::config);
    CHECK(kind({{"encoder", {{"kind", "greedy"}, {"n_qubits", 7}}}}) == error_kind::config);
    CHECK(kind({{"encoder", {{"kind", "angle"}}}}) == error_kind::config);
    CHECK(kind({{"encoder", {{"loss", "squared"}}}}) == error_kind::config);
    CHECK(kind({{"train", {{"learning_rate", -1.0}}}}) == error_kind::config);
    CHECK(kind({{"n_layers", 0}}) == error_kind::config);
    CHECK(kind(nlohmann::json::array()) == error_kind::config);

    // Angle encoding is usable when the qubit budget allows it.
    const auto angle = run_config_from_json({{"dataset", {{"resolution", 3}}}, {"encoder", {{"kind", "angle"}}}}, "/");
    CHECK_NOTHROW(angle.validate());
    CHECK(angle.n_qubits() == 9);
}

TEST_CASE("build-encoder writes deterministic artifacts", "[cli]") {
    temp_dir tmp("build");
    const auto cfg = run_config_from_json(small_config(tmp.path / "a"), tmp.path);
    std::ostringstream log;
    REQUIRE(cmd_build_encoder(cfg, {}, log) == 0);
    options other;
    other.out_dir = (tmp.path / "b").string();
    REQUIRE(cmd_build_encoder(cfg, other, log) == 0);
    for (const char *f : {"circuit.json", "loss_trace.csv", "gate_counts.json"}) {
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
    }
    const auto c = load_circuit((tmp.path / "a/circuit.json").string());
    CHECK(c.n_qubits() == 4);
    const auto trace = slurp(tmp.path / "a/loss_trace.csv");
    CHECK(trace.rfind("step,feature,chosen_gate,follow_up,loss,w\n", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 17);
    const auto counts = nlohmann::json::parse(slurp(tmp.path / "a/gate_counts.json"));
    CHECK(counts["mottonen"]["cnot"] == 56);
    CHECK(counts["greedy"]["rotations"].get<std::size_t>() <= 16);
    CHECK(log.str().find("mottonen") != std::string::npos);

    auto amp = cfg;
    amp.encoder = encoder_kind::amplitude;
    CHECK(error_kind_of([&] { cmd_build_encoder(amp, {}, log); }) == error_kind::config);
}

TEST_CASE("train, evaluate and export-distances", "[cli]") {
    temp_dir tmp("train");
    const auto cfg = run_config_from_json(small_config(tmp.path / "out"), tmp.path);
    std::ostringstream log;
    REQUIRE(cmd_train(cfg, {}, log) == 0);
    const auto out = tmp.path / "out";
    const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
    CHECK(summary["runs"].size() == 2);
    CHECK(summary["train_size"] == 100);
    const auto ckpt = nlohmann::json::parse(slurp(out / "run_1/checkpoint.json"));
    for (const char *k : {"n_qubits", "n_layers", "theta", "readout_qubit", "seed"}) CHECK(ckpt.contains(k));
    CHECK(ckpt["seed"] == 1);
    const auto history = slurp(out / "run_0/history.csv");
    CHECK(history.rfind("epoch,train_loss,train_acc,val_acc\n", 0) == 0);

    // Same seed, same bytes.
    options again;
    again.out_dir = (tmp.path / "again").string();
    REQUIRE(cmd_train(cfg, again, log) == 0);
    CHECK(slurp(tmp.path / "again/run_0/history.csv") == history);
    CHECK(slurp(tmp.path / "again/summary.json") == slurp(out / "summary.json"));

    options eval;
    eval.checkpoint = (out / "run_0/checkpoint.json").string();
    eval.limit = 50;
    eval.out_dir = (tmp.path / "eval").string();
    REQUIRE(cmd_evaluate(cfg, eval, log) == 0);
    const auto m = nlohmann::json::parse(slurp(tmp.path / "eval/metrics.json"));
    CHECK(m["total"] == 50);
    const auto &conf = m["confusion"];
    CHECK(conf[0][0].get<int>() + conf[0][1].get<int>() + conf[1][0].get<int>() + conf[1][1].get<int>() == 50);

    options ex;
    ex.limit = 12;
    ex.split = split_kind::val;
    ex.out_dir = (tmp.path / "dist").string();
    REQUIRE(cmd_export_distances(cfg, ex, log) == 0);
    std::istringstream csv(slurp(tmp.path / "dist/distances.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("label,d0,", 0) == 0);
    std::vector<std::vector<double>> d;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        CHECK((cell == "0" || cell == "1"));
        d.emplace_back();
        while (std::getline(row, cell, ',')) d.back().push_back(std::stod(cell));
    }
    REQUIRE(d.size() == 12);
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d[i][i] == 0.0);
        for (std::size_t j = 0; j < d.size(); ++j) CHECK_THAT(d[i][j], WithinAbs(d[j][i], 1e-12));
    }
    CHECK(fs::exists(tmp.path / "dist/states.csv"));
}

TEST_CASE("identical samples are at distance zero", "[cli]") {
    const auto s = pure_state(2);
    const std::vector<encoded_sample> states{{s, 0}, {s, 0}, {pure_state::from_amplitudes({0, 1, 0, 0}), 1}};
    const auto t = pairwise_distances(states);
    CHECK(t.d[0][1] == 0.0);
    CHECK(t.d[0][2] == 1.0);
    CHECK(t.labels == std::vector<int>{0, 0, 1});
}

TEST_CASE("evaluate rejects bad checkpoints and empty splits", "[cli][errors]") {
    temp_dir tmp("eval_errors");
    auto cfg = run_config_from_json(small_config(tmp.path / "out"), tmp.path);
    std::ofstream(tmp.path / "bad.json") << "{\"n_qubits\": 4}";
    options opt;
    opt.checkpoint = (tmp.path / "bad.json").string();
    std::ostringstream log;
    CHECK(error_kind_of([&] { cmd_evaluate(cfg, opt, log); }) == error_kind::format);

    std::ofstream(tmp.path / "wrong.json")
        << checkpoint_json(vqc_model::zeros(3, 1), 0, encoder_kind::greedy).dump();
    opt.checkpoint = (tmp.path / "wrong.json").string();
    CHECK(error_kind_of([&] { cmd_evaluate(cfg, opt, log); }) == error_kind::config);

    std::ofstream(tmp.path / "ok.json") << checkpoint_json(vqc_model::zeros(4, 1), 0, encoder_kind::greedy).dump();
    opt.checkpoint = (tmp.path / "ok.json").string();
    opt.limit = 0;
    CHECK(error_kind_of([&] { cmd_evaluate(cfg, opt, log); }) == error_kind::data);
}

TEST_CASE("command-line exit codes", "[cli][process]") {
    temp_dir tmp("exit");
    const auto good = write_config(tmp.path, small_config(tmp.path / "out"));

    CHECK(run_cli("build-encoder --config " + good.string()) == 0);
    CHECK(fs::exists(tmp.path / "out/circuit.json"));
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("train") == 1);
    CHECK(run_cli("train --config " + (tmp.path / "missing.json").string()) == 1);

    std::ofstream(tmp.path / "broken.json") << "{ not json";
    CHECK(run_cli("train --config " + (tmp.path / "broken.json").string()) == 1);

    auto missing_data = small_config(tmp.path / "out2");
    missing_data["dataset"]["train_images"] = (tmp.path / "nothing-here").string();
    CHECK(run_cli("build-encoder --config " + write_config(tmp.path, missing_data, "m.json").string()) == 2);

    auto huge = small_config(tmp.path / "out3");
    huge["dataset"]["pixel_scale"] = 1e308;
    CHECK(run_cli("build-encoder --config " + write_config(tmp.path, huge, "h.json").string()) == 3);

    CHECK(run_cli("evaluate --config " + good.string() + " --checkpoint " +
                  (tmp.path / "none.json").string()) == 2);
    CHECK(run_cli("evaluate --config " + good.string() + " --checkpoint x --split nope") == 1);
}
