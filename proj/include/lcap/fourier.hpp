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
/**
 * @file
 * Truncated real Fourier series: random targets, evaluation, coefficient
 * extraction from sampled model values and cross-correlation statistics.
 */
#pragma once

#include "lcap/circuit.hpp"
#include "lcap/rng.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lcap {

/// g(x) = c0 + sum_{w=1..d} (c_w e^{iwx} + conj(c_w) e^{-iwx}).
struct FourierSeries {
    double c0 = 0.0;
    /// c_1 .. c_d.
    std::vector<Complex> coeffs;

    std::size_t degree() const { return coeffs.size(); }
    bool operator==(const FourierSeries &) const = default;
};

double evaluate(const FourierSeries &g, double x);
/// k-th derivative of g at x.
double derivative(const FourierSeries &g, double x, unsigned order);

/// max_x |g(x)|: 1024-point scan, then Newton refinement of the best peaks.
double max_abs(const FourierSeries &g);

/// g scaled so that max |g| = 1. A zero series is returned unchanged.
FourierSeries normalized(const FourierSeries &g);

FourierSeries scaled(const FourierSeries &g, double factor);

/**
 * @brief Random normalized degree-d series.
 *
 * c0 and the real and imaginary parts of c_1..c_d are drawn from
 * Uniform(-0.5, 0.5) in that order, then the series is normalized.
 */
FourierSeries random_series(std::size_t d, CounterRng &rng);

/// `count` series drawn sequentially from stream 0 of `seed`.
std::vector<FourierSeries> random_series_set(std::size_t d, std::size_t count,
                                             std::uint64_t seed);

/**
 * @brief c_w = (1/N) sum_j values_j e^{-i w x_j} for w = 0..d, where
 * x_j = 2 pi j / N.
 *
 * Index 0 of the result is c0. Requires N >= 2d + 1.
 */
std::vector<Complex> extract_coefficients(std::span<const double> values,
                                          std::size_t d);

/// Series with the given c0..c_d (imaginary part of c0 dropped).
FourierSeries from_coefficients(std::span<const Complex> c);

/**
 * @brief Coefficients c_0..c_d of the circuit model for `num_samples`
 * parameter draws from Uniform[0, 2pi).
 *
 * The model is evaluated on the 2d + 1 point grid, which is exact as long as
 * d is at least the circuit's degree.
 */
std::vector<std::vector<Complex>> sample_circuit_coefficients(
    const Circuit &circuit, std::size_t d, std::size_t num_samples,
    CounterRng &rng);

/**
 * @brief Largest absolute normalized cross-correlation over all lags.
 *
 * (f*g)(tau) = sum_j f(t_j) g(t_j + tau) dt on the 100-point grid
 * t_j = 2 pi j / 100, divided by sqrt((f*f)(0) (g*g)(0)). A sign-flipped
 * copy counts as similar, so |(f*g)(tau)| is maximized. The lag is scanned on
 * the same grid and the best lag refined by Newton's method; the result is
 * clamped to [0, 1].
 */
double cross_correlation_max(const FourierSeries &f, const FourierSeries &g);

struct CrossCorrelationReport {
    /// upper[i] holds the correlations of series i with series i+1, i+2, ...
    std::vector<std::vector<double>> upper;
    /// Bins [0,0.1), ..., [0.9,1.0].
    std::array<std::size_t, 10> histogram{};
};

CrossCorrelationReport cross_correlation_report(std::span<const FourierSeries> set);

/// One line per series: "d re0 im0 re1 im1 ... red imd", 17 significant digits.
void write_series_set(std::ostream &out, std::span<const FourierSeries> set);
std::vector<FourierSeries> read_series_set(std::istream &in);
void save_series_set(const std::string &path, std::span<const FourierSeries> set);
std::vector<FourierSeries> load_series_set(const std::string &path);

} // namespace lcap
