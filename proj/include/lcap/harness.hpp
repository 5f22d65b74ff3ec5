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
 * Learning-capability experiments and the statistics reported with them.
 */
#pragma once

#include "lcap/ansatz.hpp"
#include "lcap/fourier.hpp"
#include "lcap/training.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace lcap {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)> &fn);

/// Two-sided Student-t critical value for `level` with df degrees of freedom.
double t_critical(double level, double df);

struct ConfidenceInterval {
    double mean = 0.0;
    double half_width = 0.0;
    /// False for fewer than two samples; half_width is then 0.
    bool defined = false;
};

/// t_crit(level, N-1) * s / sqrt(N) with s the N-1 sample standard deviation.
ConfidenceInterval confidence_interval(std::span<const double> values,
                                       double level = 0.95);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the maximum lands in the last bin.
Histogram histogram(std::span<const double> values, std::size_t bins = 20);

struct FunctionOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double final_loss = 0.0;
    std::size_t epochs_run = 0;
};

struct CapabilityResult {
    std::size_t degree = 0;
    std::uint64_t base_seed = 0;
    /// In function order.
    std::vector<FunctionOutcome> runs;
    std::vector<double> losses;
    double mu = 0.0;
    ConfidenceInterval ci;
    Histogram histogram;
};

/// Called once per finished function, serialized across workers.
using ProgressCallback = std::function<void(const FunctionOutcome &)>;

/// Training seed of function i.
inline std::uint64_t function_seed(std::uint64_t base_seed, std::size_t index) {
    return base_seed + index;
}

/**
 * @brief Mean final validation loss of the ansatz over a set of targets.
 *
 * Every function is trained from a fresh circuit with its own seed, so the
 * result does not depend on `workers`.
 *
 * @throws DomainError if the functions do not share one degree.
 */
CapabilityResult learning_capability(const AnsatzSpec &spec,
                                     std::span<const FourierSeries> functions,
                                     const TrainConfig &config, std::size_t workers,
                                     std::uint64_t base_seed,
                                     const ProgressCallback &progress = {});

/// Mean, CI and histogram recomputed from per-function losses.
void summarize(CapabilityResult &result);

enum class BarrenMode {
    /// Variance of the probe parameter's gradient.
    Probe,
    /// Per-parameter gradient variance averaged over all parameters.
    AllParameters,
};

struct BarrenProbeResult {
    double variance_of_gradient = 0.0;
    std::size_t sample_count = 0;
    /// Index of the probe parameter.
    std::size_t probe_parameter = 0;
};

/// First trainable parameter of an op that acts on qubit 0.
std::size_t probe_parameter(const Circuit &circuit);

/**
 * @brief Gradient variance of the full-training-set MSE under random
 * initialization.
 *
 * The probe parameter is fixed at 0 and every other parameter is drawn from
 * Uniform[0, 2pi). Samples are pooled over functions x trials and the
 * population variance is reported.
 */
BarrenProbeResult barren_variance(const AnsatzSpec &spec,
                                  std::span<const FourierSeries> functions,
                                  std::size_t trials_per_function, CounterRng &rng,
                                  BarrenMode mode = BarrenMode::Probe);

struct FrequencySummary {
    std::size_t omega = 0;
    double max_abs_re = 0.0;
    double max_abs_im = 0.0;
    /// Fraction of samples with |c_w| > 0.01.
    double fraction_nonzero = 0.0;
};

struct CoefficientStudy {
    std::vector<std::vector<Complex>> samples;
    std::vector<FrequencySummary> per_frequency;
};

CoefficientStudy coefficient_study(const AnsatzSpec &spec, std::size_t d,
                                   std::size_t num_samples, CounterRng &rng);

/// Header "index,seed,final_loss,epochs_run", one row per function.
void write_capability_table(std::ostream &out, const CapabilityResult &result);

} // namespace lcap
