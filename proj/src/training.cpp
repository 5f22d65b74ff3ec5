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
#include "lcap/training.hpp"

#include "lcap/autodiff.hpp"
#include "lcap/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace lcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Model values and gradients for one evaluation mode.
class ModelOracle {
  public:
    ModelOracle(const Circuit &circuit, const TrainConfig &config,
                std::uint64_t stream_seed)
        : circuit_(circuit), config_(config), rng_(stream_seed, 1) {
        if (config.mode == EvaluationMode::Noisy) {
            LCAP_REQUIRE(config.noise.has_value(), ConfigError,
                         "noisy training needs noise settings");
            noisy_.emplace(circuit, config.noise->model, config.noise->mapping);
        }
    }

    double value(std::span<const double> params, double x) {
        switch (config_.mode) {
        case EvaluationMode::Analytic:
            return model_value(circuit_, params, x);
        case EvaluationMode::Shots:
            return sample_from_expectation(model_value(circuit_, params, x),
                                           config_.shots.shots, rng_);
        case EvaluationMode::Noisy: {
            const double z = noisy_->expectation(params, x);
            return config_.noisy_shots
                       ? sample_from_expectation(z, config_.shots.shots, rng_)
                       : z;
        }
        }
        return 0.0;
    }

    LossAndGradient batch(std::span<const double> params,
                          std::span<const double> xs, std::span<const double> ys) {
        if (config_.mode == EvaluationMode::Analytic) {
            return dataset_loss_and_gradient(circuit_, params, xs, ys);
        }
        LossAndGradient out;
        out.grad.assign(params.size(), 0.0);
        const double scale = 2.0 / static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            const double r = value(params, x) - ys[i];
            out.loss += r * r;
            const Gradient g = parameter_shift_gradient(
                circuit_, params,
                [&](std::span<const double> p) { return value(p, x); });
            for (std::size_t k = 0; k < g.size(); ++k) {
                out.grad[k] += scale * r * g[k];
            }
        }
        out.loss /= static_cast<double>(xs.size());
        return out;
    }

    double validation_loss(std::span<const double> params, const Dataset &set) {
        if (config_.mode == EvaluationMode::Analytic ||
            (!config_.stochastic_validation && config_.mode == EvaluationMode::Shots)) {
            return dataset_loss(circuit_, params, set.xs, set.ys);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < set.xs.size(); ++i) {
            const double r = (config_.stochastic_validation
                                  ? value(params, set.xs[i])
                                  : noisy_->expectation(params, set.xs[i])) -
                             set.ys[i];
            acc += r * r;
        }
        return acc / static_cast<double>(set.xs.size());
    }

  private:
    const Circuit &circuit_;
    const TrainConfig &config_;
    CounterRng rng_;
    std::optional<NoisySimulator> noisy_;
};

} // namespace

std::vector<ScheduleSegment> default_schedule() {
    return {{120, 0.5}, {120, 0.1}, {120, 0.05}};
}

std::vector<ScheduleSegment> schedule_preset(const std::string &name,
                                             std::size_t epochs_per_segment) {
    LCAP_REQUIRE(epochs_per_segment > 0, ConfigError,
                 "preset epochs per segment must be positive");
    struct Preset {
        const char *name;
        double lr[3];
    };
    static constexpr Preset presets[] = {
        {"0", {0.3, 0.3, 0.3}},    {"1a", {0.5, 0.1, 0.05}},
        {"1b", {0.5, 0.1, 0.1}},   {"1c", {0.5, 0.5, 0.1}},
        {"2a", {0.1, 0.05, 0.01}}, {"2b", {0.1, 0.05, 0.05}},
        {"2c", {0.1, 0.1, 0.05}},
    };
    for (const auto &p : presets) {
        if (name == p.name) {
            return {{epochs_per_segment, p.lr[0]},
                    {epochs_per_segment, p.lr[1]},
                    {epochs_per_segment, p.lr[2]}};
        }
    }
    throw ConfigError("unknown learning-rate preset '" + name +
                      "' (expected 0, 1a, 1b, 1c, 2a, 2b or 2c)");
}

std::string_view to_string(EvaluationMode mode) {
    switch (mode) {
    case EvaluationMode::Analytic:
        return "analytic";
    case EvaluationMode::Shots:
        return "shots";
    case EvaluationMode::Noisy:
        return "noisy";
    }
    return "?";
}

std::optional<EvaluationMode> parse_evaluation_mode(std::string_view name) {
    for (auto m : {EvaluationMode::Analytic, EvaluationMode::Shots,
                   EvaluationMode::Noisy}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

std::size_t TrainConfig::total_epochs() const {
    std::size_t n = 0;
    for (const auto &s : schedule) {
        n += s.epochs;
    }
    return n;
}

void TrainConfig::validate() const {
    LCAP_REQUIRE(!schedule.empty(), ConfigError, "schedule must not be empty");
    for (const auto &s : schedule) {
        LCAP_REQUIRE(s.epochs > 0, ConfigError, "schedule epochs must be positive");
        LCAP_REQUIRE(s.learning_rate > 0.0, ConfigError,
                     "learning rates must be positive");
    }
    LCAP_REQUIRE(!batch_size || *batch_size > 0, ConfigError,
                 "batch size must be positive");
    LCAP_REQUIRE(cutoff > 0.0, ConfigError, "cutoff must be positive");
    LCAP_REQUIRE(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 &&
                     adam_beta2 < 1.0 && adam_epsilon > 0.0,
                 ConfigError, "Adam constants out of range");
    LCAP_REQUIRE(init_low < init_high, ConfigError, "empty initialization interval");
    LCAP_REQUIRE(shots.shots > 0, ConfigError, "shots must be positive");
    if (mode == EvaluationMode::Noisy) {
        LCAP_REQUIRE(noise.has_value(), ConfigError,
                     "noisy mode requires a noise model and qubit mapping");
        noise->model.validate();
    }
}

std::size_t dataset_size(std::size_t degree) { return degree < 10 ? 50 : 100; }

std::size_t default_batch_size(std::size_t degree) {
    return degree < 10 ? 25 : 50;
}

std::pair<Dataset, Dataset> make_datasets(const FourierSeries &target) {
    const std::size_t n = dataset_size(target.degree());
    Dataset train, val;
    train.xs.resize(n);
    val.xs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        train.xs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n - 1);
        val.xs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    }
    train.xs.back() = kTwoPi;
    for (auto *set : {&train, &val}) {
        set->ys.reserve(n);
        for (double x : set->xs) {
            set->ys.push_back(evaluate(target, x));
        }
    }
    return {std::move(train), std::move(val)};
}

void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState &state, double lr, double beta1, double beta2,
               double epsilon) {
    LCAP_REQUIRE(grad.size() == params.size() && state.m.size() == params.size(),
                 DomainError, "Adam state, gradient and parameters differ in size");
    ++state.t;
    const double t = static_cast<double>(state.t);
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / c1;
        const double vhat = state.v[i] / c2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + epsilon);
    }
}

void shuffle(std::span<std::size_t> items, CounterRng &rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

TrainResult train(const Circuit &circuit, const FourierSeries &target,
                  const TrainConfig &config, CounterRng &rng) {
    config.validate();
    circuit.validate();
    const FourierSeries scaled_target =
        config.target_scale == 1.0 ? target : scaled(target, config.target_scale);
    const auto [train_set, val_set] = make_datasets(scaled_target);
    const std::size_t batch =
        config.batch_size.value_or(default_batch_size(target.degree()));

    TrainResult result;
    result.final_params.resize(circuit.num_params());
    for (auto &p : result.final_params) {
        p = rng.uniform(config.init_low, config.init_high);
    }
    ModelOracle oracle(circuit, config, rng());
    AdamState adam(circuit.num_params());

    std::vector<std::size_t> order(train_set.xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> bx, by;
    for (const auto &segment : config.schedule) {
        for (std::size_t e = 0; e < segment.epochs; ++e) {
            shuffle(order, rng);
            for (std::size_t start = 0; start < order.size(); start += batch) {
                const std::size_t stop = std::min(order.size(), start + batch);
                bx.clear();
                by.clear();
                for (std::size_t k = start; k < stop; ++k) {
                    bx.push_back(train_set.xs[order[k]]);
                    by.push_back(train_set.ys[order[k]]);
                }
                const LossAndGradient lg = oracle.batch(result.final_params, bx, by);
                adam_step(result.final_params, lg.grad, adam, segment.learning_rate,
                          config.adam_beta1, config.adam_beta2, config.adam_epsilon);
            }
            const double loss = oracle.validation_loss(result.final_params, val_set);
            result.loss_history.push_back(loss);
            ++result.epochs_run;
            result.final_validation_loss = loss;
            if (std::isfinite(config.cutoff) && loss < config.cutoff) {
                return result;
            }
        }
    }
    return result;
}

} // namespace lcap
