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

#include "lcap/ansatz.hpp"
#include "lcap/error.hpp"
#include "lcap/fourier.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <sstream>

using namespace lcap;
using Catch::Approx;
using std::numbers::pi;

namespace {

double dense_max(const FourierSeries &g, std::size_t points = 1 << 20) {
    double best = 0;
    for (std::size_t j = 0; j < points; ++j)
        best = std::max(best, std::abs(evaluate(g, 2 * pi * static_cast<double>(j) / points)));
    return best;
}

std::vector<double> sample_grid(const FourierSeries &g, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = evaluate(g, 2 * pi * static_cast<double>(j) / n);
    return v;
}

FourierSeries shifted(const FourierSeries &g, double s) {
    // g(x + s): c_w picks up e^{i w s}.
    FourierSeries out = g;
    for (std::size_t w = 1; w <= g.degree(); ++w)
        out.coeffs[w - 1] *= std::polar(1.0, static_cast<double>(w) * s);
    return out;
}

// Plain grid definition, no lag refinement.
double grid_correlation(const FourierSeries &f, const FourierSeries &g, int k) {
    double fg = 0, ff = 0, gg = 0;
    for (int j = 0; j < 100; ++j) {
        const double t = 2 * pi * j / 100;
        fg += evaluate(f, t) * evaluate(g, t + 2 * pi * k / 100);
        ff += evaluate(f, t) * evaluate(f, t);
        gg += evaluate(g, t) * evaluate(g, t);
    }
    return fg / std::sqrt(ff * gg);
}

Circuit three_gate(GateKind w) {
    Circuit c(1);
    c.append(make_gate(w, {0}, Trainable{0}));
    c.append(make_gate(GateKind::RX, {0}, DataInput{}));
    c.append(make_gate(w, {0}, Trainable{1}));
    return c;
}

} // namespace

TEST_CASE("evaluate", "[fourier]") {
    const FourierSeries g{0.4, {{0.2, 0.2}}};
    CHECK(evaluate(g, 0.0) == Approx(0.8).epsilon(1e-15));
    CHECK(evaluate(g, pi / 2) == Approx(0.4 - 0.4).margin(1e-15));
    const FourierSeries c{0.3, {}};
    for (double x : {0.0, 1.0, 5.0}) CHECK(evaluate(c, x) == 0.3);
    CHECK(evaluate(g, 1.3) == Approx(evaluate(g, 1.3 + 2 * pi)).epsilon(1e-13));
}

TEST_CASE("derivatives agree with finite differences", "[fourier]") {
    CounterRng rng(3);
    const FourierSeries g = random_series(5, rng);
    const double h = 1e-5;
    for (double x : {0.1, 2.0, 4.4}) {
        CHECK(derivative(g, x, 0) == evaluate(g, x));
        CHECK(derivative(g, x, 1) ==
              Approx((evaluate(g, x + h) - evaluate(g, x - h)) / (2 * h)).epsilon(1e-8));
        CHECK(derivative(g, x, 2) ==
              Approx((derivative(g, x + h, 1) - derivative(g, x - h, 1)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("extract_coefficients examples", "[fourier]") {
    std::vector<double> cosv(5);
    for (int j = 0; j < 5; ++j) cosv[j] = std::cos(2 * pi * j / 5);
    const auto c = extract_coefficients(cosv, 2);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0]) < 1e-15);
    CHECK(std::abs(c[1] - Complex(0.5)) < 1e-15);
    CHECK(std::abs(c[2]) < 1e-15);

    const std::vector<double> constant(9, 0.7);
    const auto k = extract_coefficients(constant, 4);
    CHECK(std::abs(k[0] - Complex(0.7)) < 1e-15);
    for (std::size_t w = 1; w <= 4; ++w) CHECK(std::abs(k[w]) < 1e-15);

    CHECK_THROWS_AS(extract_coefficients(constant, 5), DomainError);
}

TEST_CASE("DFT round trip", "[fourier]") {
    CounterRng rng(4);
    for (std::size_t d : {1, 3, 6, 12}) {
        for (std::size_t extra : {0, 1, 7}) {
            const FourierSeries g = random_series(d, rng);
            const std::size_t n = 2 * d + 1 + extra;
            const auto values = sample_grid(g, n);
            const auto c = extract_coefficients(values, d);
            CHECK(std::abs(c[0] - Complex(g.c0)) < 1e-12);
            for (std::size_t w = 1; w <= d; ++w) CHECK(std::abs(c[w] - g.coeffs[w - 1]) < 1e-12);
            const FourierSeries back = from_coefficients(c);
            const auto again = sample_grid(back, n);
            for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(again[j] - values[j]) < 1e-12);
        }
    }
}

TEST_CASE("random series are normalized", "[fourier]") {
    CounterRng rng(5);
    for (std::size_t d : {1, 2, 5, 12}) {
        for (int k = 0; k < 5; ++k) {
            const FourierSeries g = random_series(d, rng);
            CHECK(g.degree() == d);
            CHECK(std::abs(max_abs(g) - 1.0) < 1e-6);
            CHECK(std::abs(dense_max(g) - 1.0) < 1e-6);
            const FourierSeries twice = normalized(g);
            CHECK(std::abs(twice.c0 - g.c0) < 1e-12);
            for (std::size_t w = 0; w < d; ++w) CHECK(std::abs(twice.coeffs[w] - g.coeffs[w]) < 1e-12);
        }
    }
    const FourierSeries cosx{0.0, {{0.5, 0.0}}};
    CHECK(std::abs(normalized(cosx).coeffs[0] - Complex(0.5)) < 1e-12);
    const FourierSeries zero{0.0, {{0.0, 0.0}}};
    CHECK(normalized(zero) == zero);
}

TEST_CASE("random series draw order and determinism", "[fourier]") {
    CounterRng a(77), b(77);
    const FourierSeries g = random_series(3, a);
    CHECK(g == random_series(3, b));
    // Raw draws, rescaled by the same factor as the series.
    CounterRng raw(77);
    const double c0 = raw.uniform(-0.5, 0.5);
    const double a1 = raw.uniform(-0.5, 0.5), b1 = raw.uniform(-0.5, 0.5);
    const double factor = g.c0 / c0;
    CHECK(factor > 0);
    CHECK(g.coeffs[0].real() == Approx(a1 * factor).epsilon(1e-12));
    CHECK(g.coeffs[0].imag() == Approx(b1 * factor).epsilon(1e-12));
    CHECK(random_series_set(4, 10, 9) == random_series_set(4, 10, 9));
    CHECK(random_series_set(4, 10, 9) != random_series_set(4, 10, 10));
}

TEST_CASE("cross-correlation examples", "[fourier]") {
    CounterRng rng(6);
    const FourierSeries cos1{0.0, {{0.5, 0.0}}};
    const FourierSeries cos2{0.0, {{0.0, 0.0}, {0.5, 0.0}}};
    CHECK(std::abs(cross_correlation_max(cos1, cos2)) < 1e-9);
    for (int k = 0; k < 10; ++k) {
        const FourierSeries f = random_series(1 + rng.below(12), rng);
        const FourierSeries g = random_series(1 + rng.below(12), rng);
        CHECK(std::abs(cross_correlation_max(f, f) - 1.0) < 1e-9);
        CHECK(std::abs(cross_correlation_max(f, scaled(f, -1.0)) - 1.0) < 1e-9);
        if (f.c0 * f.c0 < 0.5) {
            // A constant offset does not shift.
            CHECK(std::abs(cross_correlation_max(f, shifted(f, pi / 3)) - 1.0) < 1e-9);
        }
        const double fg = cross_correlation_max(f, g);
        CHECK(std::abs(fg - cross_correlation_max(g, f)) < 1e-12);
        CHECK(fg >= 0.0);
        CHECK(fg <= 1.0);
        // The refined lag never does worse than the plain lag grid.
        double grid = 0.0;
        for (int lag = 0; lag < 100; ++lag) grid = std::max(grid, std::abs(grid_correlation(f, g, lag)));
        CHECK(fg >= grid - 1e-12);
        CHECK(fg <= grid + 0.05);
    }
}

TEST_CASE("cross-correlation report", "[fourier]") {
    CounterRng rng(7);
    const FourierSeries f = random_series(4, rng);
    const std::vector<FourierSeries> single{f};
    const auto r1 = cross_correlation_report(single);
    CHECK(std::accumulate(r1.histogram.begin(), r1.histogram.end(), std::size_t{0}) == 0);

    const std::vector<FourierSeries> dup{f, random_series(4, rng), f};
    const auto r3 = cross_correlation_report(dup);
    CHECK(r3.upper.size() == 2);
    CHECK(r3.upper[0].size() == 2);
    CHECK(r3.upper[0][1] == Approx(1.0).epsilon(1e-9));
    CHECK(r3.histogram[9] >= 1);
    CHECK(std::accumulate(r3.histogram.begin(), r3.histogram.end(), std::size_t{0}) == 3);
}

TEST_CASE("degree-12 sets resemble the published histogram", "[fourier][slow]") {
    // Published counts for two 100-function degree-12 sets.
    const std::array<std::array<double, 10>, 2> published{{{0, 0, 0, 254, 2350, 1925, 383, 38, 0, 0},
                                                           {0, 0, 0, 268, 2404, 1823, 412, 43, 0, 0}}};
    const auto set = random_series_set(12, 100, 7);
    const auto report = cross_correlation_report(set);
    CHECK(std::accumulate(report.histogram.begin(), report.histogram.end(), std::size_t{0}) == 4950);
    CHECK(report.histogram[9] == 0);
    std::size_t bulk = 0;
    for (std::size_t b = 3; b < 8; ++b) bulk += report.histogram[b];
    CHECK(bulk > 4950 * 9 / 10);
    for (std::size_t b = 0; b < 10; ++b) {
        const double mean = 0.5 * (published[0][b] + published[1][b]);
        INFO("bin " << b << " count " << report.histogram[b] << " published " << mean);
        if (mean >= 100) CHECK(std::abs(report.histogram[b] - mean) <= 0.3 * mean);
    }
}

TEST_CASE("series set persistence", "[fourier]") {
    const auto set = random_series_set(6, 20, 11);
    std::stringstream ss;
    write_series_set(ss, set);
    CHECK(read_series_set(ss) == set);
    std::istringstream bad("2 0.1 0 0.2 0.3\n");
    CHECK_THROWS_AS(read_series_set(bad), ConfigError);
}

TEST_CASE("SW 1q1L has no constant term", "[fourier]") {
    CounterRng rng(12);
    for (auto u1 : {SingleQubitUnitary::RY, SingleQubitUnitary::RYRZ, SingleQubitUnitary::RYRZRY}) {
        LayeredSpec spec;
        spec.zero_layer = false;
        spec.u1 = u1;
        const auto samples = sample_circuit_coefficients(build_layered(spec), 1, 200, rng);
        for (const auto &c : samples) CHECK(std::abs(c[0]) < 1e-10);
    }
}

TEST_CASE("WSW 1q1L coefficient facts", "[fourier]") {
    CounterRng rng(13);
    LayeredSpec ry;
    ry.u1 = SingleQubitUnitary::RY;
    for (const auto &c : sample_circuit_coefficients(build_layered(ry), 1, 200, rng)) {
        CHECK(std::abs(c[0].imag()) < 1e-10);
        CHECK(std::abs(c[1].imag()) < 1e-10);
    }
    LayeredSpec ryrz;
    const auto samples = sample_circuit_coefficients(build_layered(ryrz), 1, 200, rng);
    CHECK(std::any_of(samples.begin(), samples.end(),
                      [](const auto &c) { return std::abs(c[1].imag()) > 0.01; }));
    CHECK(std::any_of(samples.begin(), samples.end(),
                      [](const auto &c) { return std::abs(c[0]) > 0.01; }));
    for (const auto &c : samples)
        for (const auto &v : c) CHECK(std::abs(v) <= 1.0);

    for (auto w : {GateKind::RX, GateKind::RZ}) {
        for (const auto &c : sample_circuit_coefficients(three_gate(w), 1, 200, rng)) {
            CHECK(std::abs(c[0]) < 1e-10);
            CHECK(std::abs(std::abs(c[1]) - 0.5) < 1e-10);
        }
    }
}

TEST_CASE("circuit coefficients vanish above the encoding count", "[fourier]") {
    CounterRng rng(14);
    std::vector<AnsatzSpec> specs;
    for (auto gate : {EntanglementGate::CNOT, EntanglementGate::CRX, EntanglementGate::CAN, EntanglementGate::CZ}) {
        LayeredSpec s;
        s.num_qubits = 2;
        s.num_layers = 2;
        s.ent_gate = gate;
        s.ent_style = EntStyle::Cyclic;
        s.ent_structure = EntStructure::Strong;
        specs.push_back(s);
    }
    LayeredSpec sw;
    sw.num_qubits = 3;
    sw.zero_layer = false;
    sw.ent_structure = EntStructure::Alternating;
    specs.push_back(sw);
    DqnnSpec dq;
    dq.widths = {2, 2, 1};
    specs.push_back(dq);
    for (const auto &spec : specs) {
        const Circuit c = build(spec);
        const std::size_t k = max_degree(c);
        const auto samples = sample_circuit_coefficients(c, k + 3, 200, rng);
        for (const auto &s : samples)
            for (std::size_t w = k + 1; w <= k + 3; ++w) CHECK(std::abs(s[w]) < 1e-9);
    }
}
