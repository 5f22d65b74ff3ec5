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
#include "lcap/fourier.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace lcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kNormGrid = 1024;
constexpr std::size_t kCorrGrid = 100;

// Refine a stationary point of h starting at x0 via Newton on h'.
template <class D1, class D2>
double newton_stationary(double x0, D1 &&d1, D2 &&d2) {
    double x = x0;
    for (int it = 0; it < 50; ++it) {
        const double h2 = d2(x);
        if (h2 == 0.0) {
            break;
        }
        const double step = d1(x) / h2;
        x -= step;
        if (std::abs(step) < 1e-15) {
            break;
        }
    }
    return x;
}

} // namespace

double evaluate(const FourierSeries &g, double x) {
    double acc = g.c0;
    for (std::size_t k = 0; k < g.coeffs.size(); ++k) {
        const double w = static_cast<double>(k + 1);
        acc += 2.0 * (g.coeffs[k].real() * std::cos(w * x) -
                      g.coeffs[k].imag() * std::sin(w * x));
    }
    return acc;
}

double derivative(const FourierSeries &g, double x, unsigned order) {
    if (order == 0) {
        return evaluate(g, x);
    }
    // d^k/dx^k Re(c e^{iwx}) = Re(c (iw)^k e^{iwx}).
    double acc = 0.0;
    for (std::size_t k = 0; k < g.coeffs.size(); ++k) {
        const double w = static_cast<double>(k + 1);
        const Complex factor = std::pow(Complex(0.0, w), static_cast<int>(order));
        acc += 2.0 * (g.coeffs[k] * factor * std::polar(1.0, w * x)).real();
    }
    return acc;
}

double max_abs(const FourierSeries &g) {
    std::vector<double> v(kNormGrid);
    for (std::size_t j = 0; j < kNormGrid; ++j) {
        v[j] = std::abs(evaluate(g, kTwoPi * static_cast<double>(j) / kNormGrid));
    }
    // Local maxima of |g| on the periodic grid, best first.
    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j < kNormGrid; ++j) {
        const double l = v[(j + kNormGrid - 1) % kNormGrid];
        const double r = v[(j + 1) % kNormGrid];
        if (v[j] >= l && v[j] >= r) {
            peaks.push_back(j);
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    double best = peaks.empty() ? 0.0 : v[peaks.front()];
    for (std::size_t i = 0; i < std::min<std::size_t>(peaks.size(), 4); ++i) {
        const double x0 = kTwoPi * static_cast<double>(peaks[i]) / kNormGrid;
        const double x = newton_stationary(
            x0, [&](double t) { return derivative(g, t, 1); },
            [&](double t) { return derivative(g, t, 2); });
        // Newton may wander off for flat peaks; only accept nearby points.
        if (std::abs(x - x0) < kTwoPi / kNormGrid) {
            best = std::max(best, std::abs(evaluate(g, x)));
        }
    }
    return best;
}

FourierSeries scaled(const FourierSeries &g, double factor) {
    FourierSeries out = g;
    out.c0 *= factor;
    for (auto &c : out.coeffs) {
        c *= factor;
    }
    return out;
}

FourierSeries normalized(const FourierSeries &g) {
    const double m = max_abs(g);
    if (m == 0.0) {
        return g;
    }
    return scaled(g, 1.0 / m);
}

FourierSeries random_series(std::size_t d, CounterRng &rng) {
    LCAP_REQUIRE(d >= 1, DomainError, "series degree must be at least 1");
    FourierSeries g;
    g.c0 = rng.uniform(-0.5, 0.5);
    g.coeffs.resize(d);
    for (auto &c : g.coeffs) {
        const double a = rng.uniform(-0.5, 0.5);
        const double b = rng.uniform(-0.5, 0.5);
        c = {a, b};
    }
    return normalized(g);
}

std::vector<FourierSeries> random_series_set(std::size_t d, std::size_t count,
                                             std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<FourierSeries> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_series(d, rng));
    }
    return out;
}

std::vector<Complex> extract_coefficients(std::span<const double> values,
                                          std::size_t d) {
    const std::size_t n = values.size();
    LCAP_REQUIRE(n >= 2 * d + 1, DomainError,
                 "need at least 2d+1 samples to extract degree-d coefficients");
    std::vector<Complex> c(d + 1);
    const double nd = static_cast<double>(n);
    for (std::size_t w = 0; w <= d; ++w) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            // Reduce w*j mod n before scaling to keep the phase accurate.
            const double phase = kTwoPi * static_cast<double>((w * j) % n) / nd;
            acc += values[j] * std::polar(1.0, -phase);
        }
        c[w] = acc / nd;
    }
    return c;
}

FourierSeries from_coefficients(std::span<const Complex> c) {
    FourierSeries g;
    if (c.empty()) {
        return g;
    }
    g.c0 = c[0].real();
    g.coeffs.assign(c.begin() + 1, c.end());
    return g;
}

std::vector<std::vector<Complex>> sample_circuit_coefficients(
    const Circuit &circuit, std::size_t d, std::size_t num_samples,
    CounterRng &rng) {
    const std::size_t n = 2 * d + 1;
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) {
        xs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    }
    std::vector<std::vector<Complex>> out;
    out.reserve(num_samples);
    std::vector<double> params(circuit.num_params());
    std::vector<double> values(n);
    for (std::size_t s = 0; s < num_samples; ++s) {
        for (auto &p : params) {
            p = rng.uniform(0.0, kTwoPi);
        }
        for (std::size_t j = 0; j < n; ++j) {
            values[j] = model_value(circuit, params, xs[j]);
        }
        out.push_back(extract_coefficients(values, d));
    }
    return out;
}

double cross_correlation_max(const FourierSeries &f, const FourierSeries &g) {
    const double dt = kTwoPi / kCorrGrid;
    std::array<double, kCorrGrid> fv{}, gv{};
    for (std::size_t j = 0; j < kCorrGrid; ++j) {
        const double t = dt * static_cast<double>(j);
        fv[j] = evaluate(f, t);
        gv[j] = evaluate(g, t);
    }
    double ff = 0.0, gg = 0.0;
    for (std::size_t j = 0; j < kCorrGrid; ++j) {
        ff += fv[j] * fv[j] * dt;
        gg += gv[j] * gv[j] * dt;
    }
    const double norm = std::sqrt(ff * gg);
    if (norm == 0.0) {
        return 0.0;
    }
    auto corr = [&](double tau, unsigned order) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kCorrGrid; ++j) {
            acc += fv[j] * derivative(g, dt * static_cast<double>(j) + tau, order);
        }
        return acc * dt;
    };
    std::size_t best_k = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < kCorrGrid; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < kCorrGrid; ++j) {
            acc += fv[j] * gv[(j + k) % kCorrGrid];
        }
        acc = std::abs(acc * dt);
        if (acc > best) {
            best = acc;
            best_k = k;
        }
    }
    const double tau0 = dt * static_cast<double>(best_k);
    const double tau = newton_stationary(
        tau0, [&](double t) { return corr(t, 1); },
        [&](double t) { return corr(t, 2); });
    if (std::abs(tau - tau0) < dt) {
        best = std::max(best, std::abs(corr(tau, 0)));
    }
    return std::clamp(best / norm, 0.0, 1.0);
}

CrossCorrelationReport cross_correlation_report(std::span<const FourierSeries> set) {
    CrossCorrelationReport r;
    if (set.size() < 2) {
        return r;
    }
    r.upper.resize(set.size() - 1);
    for (std::size_t i = 0; i + 1 < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const double c = cross_correlation_max(set[i], set[j]);
            r.upper[i].push_back(c);
            const auto bin = std::min<std::size_t>(
                9, static_cast<std::size_t>(std::floor(c * 10.0)));
            ++r.histogram[bin];
        }
    }
    return r;
}

void write_series_set(std::ostream &out, std::span<const FourierSeries> set) {
    out << std::setprecision(17);
    for (const auto &g : set) {
        out << g.degree() << ' ' << g.c0 << ' ' << 0.0;
        for (const auto &c : g.coeffs) {
            out << ' ' << c.real() << ' ' << c.imag();
        }
        out << '\n';
    }
}

std::vector<FourierSeries> read_series_set(std::istream &in) {
    std::vector<FourierSeries> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::size_t d = 0;
        if (!(ls >> d)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw ConfigError("series line " + std::to_string(line_no) +
                              ": expected degree");
        }
        FourierSeries g;
        double im0 = 0.0;
        if (!(ls >> g.c0 >> im0)) {
            throw ConfigError("series line " + std::to_string(line_no) +
                              ": missing c0");
        }
        g.coeffs.resize(d);
        for (auto &c : g.coeffs) {
            double re = 0.0, im = 0.0;
            if (!(ls >> re >> im)) {
                throw ConfigError("series line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(d) +
                                  " coefficient pairs");
            }
            c = {re, im};
        }
        std::string extra;
        if (ls >> extra) {
            throw ConfigError("series line " + std::to_string(line_no) +
                              ": trailing token '" + extra + "'");
        }
        out.push_back(std::move(g));
    }
    return out;
}

void save_series_set(const std::string &path, std::span<const FourierSeries> set) {
    std::ofstream out(path);
    LCAP_REQUIRE(out.good(), Error, "cannot write '" + path + "'");
    write_series_set(out, set);
}

std::vector<FourierSeries> load_series_set(const std::string &path) {
    std::ifstream in(path);
    LCAP_REQUIRE(in.good(), ConfigError, "cannot open series file '" + path + "'");
    return read_series_set(in);
}

} // namespace lcap
