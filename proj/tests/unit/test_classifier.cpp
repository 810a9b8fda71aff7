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

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace qembed;
using qembed::testing::random_state;
using qembed::testing::random_vector;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;

vqc_model model_with(std::size_t n, std::size_t layers, std::vector<double> theta) {
    auto m = vqc_model::zeros(n, layers);
    m.theta = std::move(theta);
    return m;
}

/// Class 0 -> |0...0>, class 1 -> |0...01> (readout qubit set).
std::vector<encoded_sample> orthogonal_toy(std::size_t n_qubits, std::size_t per_class) {
    std::vector<complex_t> one(std::size_t{1} << n_qubits, complex_t{});
    one[1] = 1.0;
    std::vector<encoded_sample> out;
    for (std::size_t i = 0; i < per_class; ++i) {
        out.push_back({pure_state(n_qubits), 0});
        out.push_back({pure_state::from_amplitudes(one), 1});
    }
    return out;
}

double central_difference(std::span<const encoded_sample> batch, vqc_model m, std::size_t k, double h) {
    const double t = m.theta[k];
    m.theta[k] = t + h;
    const double plus = mean_loss(batch, m);
    m.theta[k] = t - h;
    const double minus = mean_loss(batch, m);
    return (plus - minus) / (2.0 * h);
}

} // namespace

TEST_CASE("vqc_circuit layout", "[vqc]") {
    const auto c = vqc_circuit(6, 1);
    REQUIRE(c.size() == 12);
    for (std::size_t q = 0; q < 6; ++q) CHECK(c.gates()[q] == gate::ry(q, angle_source::param(q)));
    for (std::size_t q = 0; q < 5; ++q) CHECK(c.gates()[6 + q] == gate::cnot(q, q + 1));
    CHECK(c.gates()[11] == gate::cnot(5, 0));

    const auto two = vqc_circuit(2, 1);
    REQUIRE(two.size() == 4);
    CHECK(two.gates()[2] == gate::cnot(0, 1));
    CHECK(two.gates()[3] == gate::cnot(1, 0));

    const auto deep = vqc_circuit(4, 3);
    CHECK(deep.size() == 24);
    CHECK(deep.param_count() == 12);
    CHECK(deep.gates()[8] == gate::ry(0, angle_source::param(4)));

    CHECK_THROWS_AS(vqc_circuit(1, 1), error);
    CHECK_THROWS_AS(vqc_circuit(3, 0), error);
}

TEST_CASE("vqc_model invariants", "[vqc]") {
    const auto m = vqc_model::zeros(4, 2);
    CHECK(m.theta.size() == 8);
    CHECK(m.readout_qubit == 3);
    auto bad = m;
    bad.theta.pop_back();
    CHECK_THROWS_AS(bad.validate(), error);
    bad = m;
    bad.readout_qubit = 4;
    CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("forward examples", "[vqc]") {
    const circuit empty(2);
    CHECK(forward(empty, vqc_model::zeros(2, 1), std::vector<double>{}) == 0.0);

    // Hand simulation: Ry(pi) on qubit 1 gives |01>; CNOT(0,1) idle;
    // CNOT(1,0) flips qubit 0 -> |11>, so P(q1 = 1) = 1.
    CHECK_THAT(forward(empty, model_with(2, 1, {0.0, pi}), std::vector<double>{}), WithinAbs(1.0, 1e-12));
    // |10> -> CNOT(0,1) -> |11> -> CNOT(1,0) -> |01>.
    CHECK_THAT(forward(empty, model_with(2, 1, {pi, 0.0}), std::vector<double>{}), WithinAbs(1.0, 1e-12));
    // (|00>+|10>)/sqrt2 -> (|00>+|11>)/sqrt2 -> (|00>+|01>)/sqrt2.
    CHECK_THAT(forward(empty, model_with(2, 1, {pi / 2, 0.0}), std::vector<double>{}), WithinAbs(0.5, 1e-12));

    // Closed form for 2 qubits, 1 layer from |00>: p = (1 - cos a cos b) / 2.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto th = random_vector(2, rng);
        CHECK_THAT(forward(empty, model_with(2, 1, th), std::vector<double>{}),
                   WithinAbs((1.0 - std::cos(th[0]) * std::cos(th[1])) / 2.0, 1e-12));
    }

    CHECK_THROWS_AS(forward(circuit(3), vqc_model::zeros(2, 1), std::vector<double>{}), error);
}

TEST_CASE("forward stays in [0, 1]", "[vqc][property]") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + i % 4;
        const auto m = model_with(n, 1 + i % 2, random_vector(n * (1 + i % 2), rng, -10, 10));
        const double p = forward_state(random_state(n, rng), m);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("bce_loss", "[vqc]") {
    CHECK_THAT(bce_loss(0.5, 0), WithinAbs(std::log(2.0), 1e-15));
    CHECK_THAT(bce_loss(0.5, 1), WithinAbs(0.6931471805599453, 1e-15));
    CHECK_THAT(bce_loss(1.0, 1), WithinAbs(0.0, 1e-11));
    CHECK_THAT(bce_loss(0.9, 0), WithinAbs(2.302585092994046, 1e-12));
    CHECK(std::isfinite(bce_loss(0.0, 1)));
    CHECK_THAT(bce_loss(0.0, 1), WithinAbs(-std::log(1e-12), 1e-9));
    CHECK(bce_derivative(0.0, 1) == 0.0);
    CHECK_THAT(bce_derivative(0.25, 1), WithinAbs(-4.0, 1e-12));
    CHECK_THAT(bce_derivative(0.25, 0), WithinAbs(1.0 / 0.75, 1e-12));
    CHECK(predict(0.5) == 1);
    CHECK(predict(0.4999) == 0);
}

TEST_CASE("gradient matches the closed form", "[gradient]") {
    // p = (1 - cos t0 cos t1) / 2 with label 1: dL/dt1 = -(cos t0 sin t1 / 2) / p.
    const std::vector<encoded_sample> batch{{pure_state(2), 1}};
    for (double t1 : {0.4, 1.3, 2.5, -2.0}) {
        const auto g = gradient(batch, model_with(2, 1, {0.0, t1}));
        // With t0 = 0: p = sin^2(t1/2) and dL/dt1 = -cot(t1/2).
        CHECK_THAT(g[1], WithinAbs(-1.0 / std::tan(t1 / 2.0), 1e-10));
        CHECK_THAT(g[0], WithinAbs(0.0, 1e-12));
    }
    const double t0 = 0.7, t1 = -1.1;
    const double p = (1.0 - std::cos(t0) * std::cos(t1)) / 2.0;
    const auto g = gradient(batch, model_with(2, 1, {t0, t1}));
    CHECK_THAT(g[0], WithinAbs(-(std::sin(t0) * std::cos(t1) / 2.0) / p, 1e-10));
    CHECK_THAT(g[1], WithinAbs(-(std::cos(t0) * std::sin(t1) / 2.0) / p, 1e-10));
}

TEST_CASE("gradient vanishes where p equals the label", "[gradient]") {
    // theta = (0, 0) maps |00> to p = 0; theta = (0, pi) maps it to p = 1.
    const std::vector<encoded_sample> zero{{pure_state(2), 0}};
    const auto g0 = gradient(zero, vqc_model::zeros(2, 1));
    CHECK(std::hypot(g0[0], g0[1]) <= 1e-8);
    const std::vector<encoded_sample> one{{pure_state(2), 1}};
    const auto g1 = gradient(one, model_with(2, 1, {0.0, pi}));
    CHECK(std::hypot(g1[0], g1[1]) <= 1e-8);
    CHECK_THROWS_AS(gradient(std::vector<encoded_sample>{}, vqc_model::zeros(2, 1)), error);
}

TEST_CASE("parameter shift agrees with central differences", "[gradient][property]") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t layers = 1 + trial % 2;
        const auto m = model_with(n, layers, random_vector(n * layers, rng));
        std::vector<encoded_sample> batch;
        for (int i = 0; i < 4; ++i) batch.push_back({random_state(n, rng), i % 2});
        const auto g = gradient(batch, m);
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK_THAT(g[k], WithinAbs(central_difference(batch, m, k, 1e-5), 1e-6));
        }
    }
}

TEST_CASE("adam_step", "[adam]") {
    SECTION("zero gradient leaves theta unchanged") {
        adam_state st;
        std::vector<double> theta{0.3, -0.2, 1.0};
        const auto before = theta;
        adam_step(st, theta, std::vector<double>{0.0, 0.0, 0.0}, {});
        CHECK(theta == before);
        CHECK(st.step == 1);
    }
    SECTION("first step moves each coordinate by about the learning rate") {
        adam_state st;
        std::vector<double> theta{0.0, 0.0};
        adam_step(st, theta, std::vector<double>{3.0, -0.02}, {});
        CHECK_THAT(theta[0], WithinAbs(-0.01, 1e-8));
        CHECK_THAT(theta[1], WithinAbs(0.01, 1e-8));
    }
    SECTION("two steps follow the hand recurrence") {
        adam_state st;
        std::vector<double> theta{0.5, -0.3};
        adam_step(st, theta, std::vector<double>{0.1, -0.2}, {});
        CHECK_THAT(theta[0], WithinAbs(0.4900000009999999, 1e-12));
        CHECK_THAT(theta[1], WithinAbs(-0.29000000049999997, 1e-12));
        adam_step(st, theta, std::vector<double>{0.05, 0.4}, {});
        CHECK_THAT(theta[0], WithinAbs(0.4806782057911871, 1e-12));
        CHECK_THAT(theta[1], WithinAbs(-0.29366103565460366, 1e-12));
        CHECK(st.step == 2);
    }
    SECTION("length mismatch") {
        adam_state st;
        std::vector<double> theta{0.0};
        CHECK_THROWS_AS(adam_step(st, theta, std::vector<double>{1.0, 2.0}, {}), error);
    }
}

TEST_CASE("metrics from a confusion matrix", "[metrics]") {
    // Class 1 positive: tp = 59, fp = 9, fn = 3, tn = 29.
    const confusion_matrix conf{{{29, 9}, {3, 59}}};
    const auto m = metrics_from_confusion(conf);
    CHECK(m.total() == 100);
    CHECK_THAT(m.accuracy, WithinAbs(0.88, 1e-15));
    CHECK_THAT(m.per_class[1].precision, WithinAbs(59.0 / 68.0, 1e-15));
    CHECK_THAT(m.per_class[1].recall, WithinAbs(59.0 / 62.0, 1e-15));
    CHECK_THAT(m.per_class[0].precision, WithinAbs(29.0 / 32.0, 1e-15));
    CHECK_THAT(m.per_class[0].recall, WithinAbs(29.0 / 38.0, 1e-15));
    const double p = 59.0 / 68.0, r = 59.0 / 62.0;
    CHECK_THAT(m.per_class[1].f1, WithinAbs(2 * p * r / (p + r), 1e-15));
}

TEST_CASE("metrics for perfect and degenerate predictors", "[metrics]") {
    const std::vector<int> labels{0, 1, 0, 1, 1, 0};
    const auto perfect = metrics_from_predictions(labels, labels);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.per_class[0].f1 == 1.0);
    CHECK(perfect.per_class[1].f1 == 1.0);

    const std::vector<int> ones(6, 1);
    const auto degenerate = metrics_from_predictions(labels, ones);
    CHECK(degenerate.accuracy == 0.5);
    CHECK(degenerate.per_class[1].recall == 1.0);
    CHECK(degenerate.per_class[0].recall == 0.0);
    CHECK(degenerate.per_class[0].precision == 0.0);
    CHECK(degenerate.per_class[0].f1 == 0.0);

    CHECK_THROWS_AS(metrics_from_predictions(labels, std::vector<int>{1}), error);
    CHECK_THROWS_AS(metrics_from_predictions(std::vector<int>{2}, std::vector<int>{1}), error);
}

TEST_CASE("metrics identities on random confusions", "[metrics][property]") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> cell(0, 50);
    for (int i = 0; i < 200; ++i) {
        confusion_matrix conf{{{cell(rng), cell(rng)}, {cell(rng), cell(rng)}}};
        if (i % 10 == 0) conf[0][1] = conf[1][1] = 0;
        const auto m = metrics_from_confusion(conf);
        if (m.total() == 0) continue;
        CHECK_THAT(m.accuracy, WithinAbs(static_cast<double>(conf[0][0] + conf[1][1]) / m.total(), 1e-15));
        for (std::size_t c = 0; c < 2; ++c) {
            const double tp = conf[c][c], fp = conf[1 - c][c], fn = conf[c][1 - c];
            CHECK_THAT(m.per_class[c].precision * (tp + fp), WithinAbs(tp, 1e-9));
            CHECK_THAT(m.per_class[c].recall * (tp + fn), WithinAbs(tp, 1e-9));
            CHECK(m.per_class[c].f1 >= 0.0);
            CHECK(m.per_class[c].f1 <= 1.0);
        }
    }
}

TEST_CASE("training solves the orthogonal-state task", "[train]") {
    const auto data = orthogonal_toy(3, 32);
    train_config cfg;
    cfg.epochs = 10;
    cfg.seed = 7;
    const auto r = train(data, {}, 1, cfg);
    REQUIRE(r.history.size() == 10);
    CHECK(r.history.back().train_acc == 1.0);
    CHECK(r.best_epoch == 10);
    for (std::size_t e = 2; e < r.history.size(); ++e) {
        CHECK(r.history[e].train_loss <= r.history[e - 1].train_loss + 1e-6);
    }
    const auto m = evaluate(data, r.model);
    CHECK(m.accuracy == 1.0);
    CHECK(m.total() == data.size());
}

TEST_CASE("training is seeded and deterministic", "[train]") {
    std::mt19937_64 rng(1);
    std::vector<encoded_sample> data;
    for (int i = 0; i < 40; ++i) data.push_back({random_state(3, rng), i % 2});
    train_config cfg;
    cfg.epochs = 3;
    cfg.batch_size = 8;
    cfg.seed = 11;
    const auto a = train(data, data, 2, cfg);
    const auto b = train(data, data, 2, cfg);
    CHECK(a.model.theta == b.model.theta);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].train_loss == b.history[i].train_loss);
        CHECK(a.history[i].val_acc == b.history[i].val_acc);
    }
    cfg.seed = 12;
    CHECK(train(data, data, 2, cfg).model.theta != a.model.theta);
}

TEST_CASE("training selects the best validation epoch", "[train]") {
    std::mt19937_64 rng(2);
    std::vector<encoded_sample> data;
    for (int i = 0; i < 30; ++i) data.push_back({random_state(2, rng), i % 2});
    train_config cfg;
    cfg.epochs = 6;
    const auto r = train(data, data, 1, cfg);
    double best = -1.0;
    std::size_t best_epoch = 0;
    for (const auto &h : r.history) {
        if (h.val_acc > best) {
            best = h.val_acc;
            best_epoch = h.epoch;
        }
    }
    CHECK(r.best_epoch == best_epoch);
    CHECK(accuracy(data, r.model) == best);
}

TEST_CASE("training and evaluation errors", "[train]") {
    train_config cfg;
    CHECK_THROWS_AS(train(std::vector<encoded_sample>{}, {}, 1, cfg), error);
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(cfg.validate(), error);
    cfg = {};
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), error);
    CHECK_THROWS_AS(evaluate(std::vector<encoded_sample>{}, vqc_model::zeros(2, 1)), error);
    CHECK_THROWS_AS(evaluate(circuit(3), vqc_model::zeros(2, 1), sample_set{{{0.0}, 0}}), error);
}
