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
 * Experiment configuration files and the driver behind the command line.
 */
#pragma once

#include "lcap/ansatz.hpp"
#include "lcap/harness.hpp"
#include "lcap/training.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcap {

enum class ExperimentKind {
    Capability,
    Coeffs,
    Barren,
    Counts,
    FourierGen,
    Dla,
    NoisyCapability,
    ShotCapability,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct FunctionSource {
    /// Load from this file when set, else generate `count` series from `seed`.
    std::optional<std::string> path;
    std::size_t count = 100;
    std::uint64_t seed = 0;
    bool operator==(const FunctionSource &) const = default;
};

struct NoiseSource {
    /// Noise-model file; the built-in calibration snapshot when absent.
    std::optional<std::string> model_path;
    /// Logical to physical qubits; identity when empty.
    std::vector<std::size_t> mapping;
    double target_scale = 0.75;
    /// Sample measurements on top of the density matrix.
    bool sample_shots = false;
    bool operator==(const NoiseSource &) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Capability;
    AnsatzSpec ansatz = LayeredSpec{};
    std::size_t degree = 1;
    FunctionSource functions;
    /// Learning-rate preset name; overrides training.schedule when set.
    std::optional<std::string> preset;
    std::size_t preset_epochs = 120;
    TrainConfig training;
    NoiseSource noise;
    /// Base seed for training (per-function seed = seed + index) and sampling.
    std::uint64_t seed = 0;
    /// 0 picks a default at run time.
    std::size_t workers = 0;
    std::string output = "results";
    std::size_t barren_trials = 1;
    BarrenMode barren_mode = BarrenMode::Probe;
    std::size_t coeff_samples = 100;
    /// Lift the qubit caps of the shot (6) and noisy (4) kinds.
    bool allow_large = false;

    bool operator==(const ExperimentConfig &) const = default;
};

/**
 * @brief Parses a JSON experiment document, fills defaults and validates.
 *
 * Missing batch size defaults from the degree; a preset replaces the
 * schedule.
 *
 * The document may omit "kind" when `default_kind` is given; if both are
 * present they must agree.
 *
 * @throws ConfigError with the offending line for syntax errors, and for
 * unknown keys, presets or values.
 */
ExperimentConfig parse_config(std::string_view text,
                              std::optional<ExperimentKind> default_kind = std::nullopt);
ExperimentConfig load_config(const std::string &path,
                             std::optional<ExperimentKind> default_kind = std::nullopt);
std::string serialize_config(const ExperimentConfig &config);

void validate_config(const ExperimentConfig &config);

struct RunOptions {
    std::filesystem::path out_dir;
    std::size_t workers = 1;
    /// Summary lines (stdout in the CLI).
    std::ostream *summary = nullptr;
    /// Per-function progress lines (stderr in the CLI).
    std::ostream *progress = nullptr;
};

/// Runs one experiment and writes its result document and table into
/// options.out_dir. Returns the names of the files written.
std::vector<std::string> run_experiment(const ExperimentConfig &config,
                                        const RunOptions &options);

} // namespace lcap
