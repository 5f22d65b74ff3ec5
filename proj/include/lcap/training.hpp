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
 * Adam training of circuit parameters against a Fourier target.
 */
#pragma once

#include "lcap/circuit.hpp"
#include "lcap/fourier.hpp"
#include "lcap/noise.hpp"
#include "lcap/rng.hpp"
#include "lcap/shots.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lcap {

struct ScheduleSegment {
    std::size_t epochs = 0;
    double learning_rate = 0.0;
    bool operator==(const ScheduleSegment &) const = default;
};

/// [(120, 0.5), (120, 0.1), (120, 0.05)].
std::vector<ScheduleSegment> default_schedule();

/**
 * @brief Learning-rate preset by name ("0", "1a".."1c", "2a".."2c") with the
 * given number of epochs in each of its three segments.
 *
 * @throws ConfigError for an unknown name or zero epochs.
 */
std::vector<ScheduleSegment> schedule_preset(const std::string &name,
                                             std::size_t epochs_per_segment = 120);

/// How model values are obtained while training.
enum class EvaluationMode {
    /// Exact statevector, adjoint gradients.
    Analytic,
    /// Binomially sampled <Z>, parameter-shift gradients.
    Shots,
    /// Density matrix under a NoiseModel, parameter-shift gradients,
    /// optionally with shot sampling on top.
    Noisy,
};

std::string_view to_string(EvaluationMode mode);
std::optional<EvaluationMode> parse_evaluation_mode(std::string_view name);

struct NoiseSettings {
    NoiseModel model;
    /// Logical qubit i runs on physical qubit mapping[i].
    std::vector<std::size_t> mapping;
    bool operator==(const NoiseSettings &) const = default;
};

struct TrainConfig {
    std::vector<ScheduleSegment> schedule = default_schedule();
    /// Defaults to 25 (degree < 10) or 50 when absent.
    std::optional<std::size_t> batch_size;
    /// Early-stopping threshold; infinity disables early stopping.
    double cutoff = 5e-5;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-7;
    /// Initial parameters are drawn from Uniform[init_low, init_high).
    double init_low = 0.0;
    double init_high = 6.283185307179586;
    EvaluationMode mode = EvaluationMode::Analytic;
    /// Used by Shots, and by Noisy when noisy_shots is set.
    ShotConfig shots;
    bool noisy_shots = false;
    /// Validate with the same stochastic evaluator used for training.
    bool stochastic_validation = true;
    std::optional<NoiseSettings> noise;
    /// Target values are multiplied by this factor before training.
    double target_scale = 1.0;

    std::size_t total_epochs() const;
    void validate() const;
    bool operator==(const TrainConfig &) const = default;
};

struct Dataset {
    std::vector<double> xs;
    std::vector<double> ys;
};

/// 50 points below degree 10, else 100.
std::size_t dataset_size(std::size_t degree);
/// 25 below degree 10, else 50.
std::size_t default_batch_size(std::size_t degree);

/**
 * @brief Train set: N points on [0, 2pi] including both ends. Validation
 * set: x_j = 2 pi j / N, j = 0..N-1.
 */
std::pair<Dataset, Dataset> make_datasets(const FourierSeries &target);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t t = 0;
    explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update of params in place.
void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState &state, double lr, double beta1, double beta2,
               double epsilon);

struct TrainResult {
    double final_validation_loss = 0.0;
    std::size_t epochs_run = 0;
    std::vector<double> final_params;
    std::vector<double> loss_history;
};

/**
 * @brief Fits the circuit model to `target`.
 *
 * Parameters are initialized from `rng`, the training set is reshuffled
 * from `rng` every epoch, and one Adam step is taken per batch. Training
 * stops after the first epoch whose validation loss is below the cutoff.
 * Stochastic evaluations draw from a stream derived from `rng`.
 */
TrainResult train(const Circuit &circuit, const FourierSeries &target,
                  const TrainConfig &config, CounterRng &rng);

/// Fisher-Yates shuffle driven by rng.
void shuffle(std::span<std::size_t> items, CounterRng &rng);

} // namespace lcap
