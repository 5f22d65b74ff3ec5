// Copyright 2026 The lcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcap/error.hpp"
#include "lcap/harness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

using namespace lcap;
using Catch::Approx;
using std::numbers::pi;

namespace {

// P(0 < T < t) for Student t with df degrees of freedom, by Simpson's rule.
double t_central_mass(double t, double df) {
    const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) / std::sqrt(df * pi);
    auto pdf = [&](double u) { return c * std::pow(1 + u * u / df, -(df + 1) / 2); };
    const int n = 20000;
    const double h = t / n;
    double s = pdf(0) + pdf(t);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * pdf(i * h);
    return s * h / 3;
}

double t_quantile_oracle(double level, double df) {
    double lo = 0, hi = 100;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (t_central_mass(mid, df) < level / 2 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LayeredSpec small_spec() {
    LayeredSpec s;
    s.num_qubits = 2;
    s.ent_gate = EntanglementGate::CRX;
    return s;
}

TrainConfig short_config() {
    TrainConfig c;
    c.schedule = {{15, 0.1}};
    return c;
}

LayeredSpec barren_family(std::size_t n) {
    LayeredSpec s;
    s.num_qubits = n;
    s.num_layers = 12 / n;
    s.u1 = SingleQubitUnitary::RYRZ;
    s.ent_gate = EntanglementGate::CRX;
    s.ent_layers = 3;
    return s;
}

} // namespace

TEST_CASE("Student t critical values", "[harness]") {
    CHECK(t_critical(0.95, 1) == Approx(std::tan(pi * 0.475)).epsilon(1e-10));
    CHECK(t_critical(0.95, 1) == Approx(12.7062).epsilon(1e-5));
    CHECK(t_critical(0.95, 99) == Approx(1.9842).epsilon(1e-4));
    for (double df : {2.0, 5.0, 30.0, 99.0})
        CHECK(t_critical(0.95, df) == Approx(t_quantile_oracle(0.95, df)).epsilon(1e-8));
    CHECK(t_critical(0.99, 10) == Approx(t_quantile_oracle(0.99, 10)).epsilon(1e-8));
}

TEST_CASE("confidence interval", "[harness]") {
    const std::vector<double> two{0.0, 2.0};
    const auto ci = confidence_interval(two);
    CHECK(ci.defined);
    CHECK(ci.mean == 1.0);
    CHECK(ci.half_width == Approx(std::tan(pi * 0.475)).epsilon(1e-10));

    const std::vector<double> same(7, 0.25);
    CHECK(confidence_interval(same).half_width == 0.0);

    const std::vector<double> one{0.3};
    const auto c1 = confidence_interval(one);
    CHECK_FALSE(c1.defined);
    CHECK(c1.half_width == 0.0);
    CHECK(c1.mean == 0.3);

    std::vector<double> many(100);
    for (std::size_t i = 0; i < many.size(); ++i) many[i] = std::sin(static_cast<double>(i));
    const double mean = std::accumulate(many.begin(), many.end(), 0.0) / 100;
    double ss = 0;
    for (double v : many) ss += (v - mean) * (v - mean);
    const auto c100 = confidence_interval(many);
    CHECK(c100.half_width == Approx(t_quantile_oracle(0.95, 99) * std::sqrt(ss / 99) / 10).epsilon(1e-8));
}

TEST_CASE("histogram", "[harness]") {
    const std::vector<double> v{0.0, 0.1, 0.5, 0.99, 1.0};
    const Histogram h = histogram(v, 20);
    CHECK(h.counts.size() == 20);
    CHECK(h.lo == 0.0);
    CHECK(h.hi == 1.0);
    CHECK(h.counts[0] == 1);
    CHECK(h.counts[2] == 1);
    CHECK(h.counts[10] == 1);
    CHECK(h.counts[19] == 2);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == v.size());
    const std::vector<double> flat(4, 0.2);
    const Histogram hf = histogram(flat, 20);
    CHECK(std::accumulate(hf.counts.begin(), hf.counts.end(), std::size_t{0}) == 4);
}

TEST_CASE("parallel_for visits every index and propagates errors", "[harness]") {
    for (std::size_t workers : {1, 3, 8}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
        for (auto &h : hits) CHECK(h == 1);
    }
    CHECK_THROWS_AS(parallel_for(10, 4,
                                 [](std::size_t i) {
                                     if (i == 6) throw DomainError("boom");
                                 }),
                    DomainError);
}

TEST_CASE("single-function capability", "[harness]") {
    const auto fns = random_series_set(2, 1, 3);
    const auto r = learning_capability(small_spec(), fns, short_config(), 1, 40);
    REQUIRE(r.losses.size() == 1);
    CHECK(r.mu == r.losses[0]);
    CHECK_FALSE(r.ci.defined);
    CHECK(r.ci.half_width == 0.0);
    CHECK(r.runs[0].seed == 40);

    CounterRng rng(function_seed(40, 0));
    const TrainResult direct = train(build(AnsatzSpec{small_spec()}), fns[0], short_config(), rng);
    CHECK(direct.final_validation_loss == r.losses[0]);
}

TEST_CASE("capability is independent of the worker count", "[harness]") {
    const auto fns = random_series_set(2, 6, 5);
    std::size_t calls = 0;
    const auto one = learning_capability(small_spec(), fns, short_config(), 1, 100,
                                         [&](const FunctionOutcome &) { ++calls; });
    const auto four = learning_capability(small_spec(), fns, short_config(), 4, 100);
    CHECK(calls == 6);
    CHECK(one.losses == four.losses);
    CHECK(one.mu == four.mu);
    const double mean = std::accumulate(one.losses.begin(), one.losses.end(), 0.0) / 6.0;
    CHECK(std::abs(one.mu - mean) <= 1e-15 * mean);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(one.runs[i].index == i);
        CHECK(one.runs[i].seed == 100 + i);
    }
    CapabilityResult copy = one;
    copy.mu = -1;
    summarize(copy);
    CHECK(copy.mu == one.mu);
    CHECK(std::accumulate(one.histogram.counts.begin(), one.histogram.counts.end(), std::size_t{0}) == 6);

    std::ostringstream os;
    write_capability_table(os, one);
    CHECK(os.str().rfind("index,seed,final_loss,epochs_run\n0,100,", 0) == 0);

    auto mixed = fns;
    mixed.push_back(random_series_set(3, 1, 1)[0]);
    CHECK_THROWS_AS(learning_capability(small_spec(), mixed, short_config(), 1, 0), DomainError);
}

TEST_CASE("probe parameter", "[harness]") {
    const Circuit c = build(AnsatzSpec{barren_family(4)});
    const std::size_t p = probe_parameter(c);
    bool found = false;
    for (const auto &op : c.ops()) {
        if (op.trainable_index() == p) {
            CHECK(op.qubits()[0] == 0);
            found = true;
            break;
        }
        if (op.trainable_index() && op.qubits()[0] == 0) FAIL("earlier trainable gate on qubit 0");
    }
    CHECK(found);
}

TEST_CASE("barren variance on one qubit", "[harness]") {
    LayeredSpec s;
    s.u1 = SingleQubitUnitary::RY;
    const auto fns = random_series_set(1, 10, 2);
    CounterRng a(3), b(3);
    const auto r = barren_variance(s, fns, 20, a);
    CHECK(r.variance_of_gradient > 1e-3);
    CHECK(r.sample_count == 200);
    CHECK(barren_variance(s, fns, 20, b).variance_of_gradient == r.variance_of_gradient);
    CounterRng c(3);
    CHECK(barren_variance(s, fns, 20, c, BarrenMode::AllParameters).variance_of_gradient > 0.0);
}

TEST_CASE("barren variance shrinks with qubit count", "[harness][slow]") {
    const auto fns = random_series_set(12, 10, 21);
    std::vector<double> var;
    for (std::size_t n : {2, 4, 6}) {
        CounterRng rng(22);
        var.push_back(barren_variance(barren_family(n), fns, 5, rng).variance_of_gradient);
    }
    CHECK(var[1] < 2 * var[0]);
    CHECK(var[2] < 2 * var[1]);
    CHECK(var[2] < var[0]);
}

TEST_CASE("coefficient study", "[harness]") {
    LayeredSpec wsw;
    CounterRng rng(30);
    const auto study = coefficient_study(wsw, 1, 100, rng);
    CHECK(study.samples.size() == 100);
    REQUIRE(study.per_frequency.size() == 2);
    CHECK(study.per_frequency[1].omega == 1);
    double max_im = 0;
    std::size_t nonzero = 0;
    for (const auto &s : study.samples) {
        max_im = std::max(max_im, std::abs(s[1].imag()));
        nonzero += std::abs(s[1]) > 0.01;
    }
    CHECK(study.per_frequency[1].max_abs_im == max_im);
    CHECK(study.per_frequency[1].fraction_nonzero == nonzero / 100.0);
}
