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
#include "lcap/harness.hpp"

#include "lcap/autodiff.hpp"
#include "lcap/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

namespace lcap {

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)> &fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double t_critical(double level, double df) {
    LCAP_REQUIRE(level > 0.0 && level < 1.0, DomainError,
                 "confidence level must lie in (0, 1)");
    LCAP_REQUIRE(df > 0.0, DomainError, "degrees of freedom must be positive");
    const boost::math::students_t dist(df);
    return boost::math::quantile(dist, 0.5 + level / 2.0);
}

ConfidenceInterval confidence_interval(std::span<const double> values,
                                       double level) {
    ConfidenceInterval ci;
    if (values.empty()) {
        return ci;
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    ci.mean = sum / n;
    if (values.size() < 2) {
        return ci;
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - ci.mean) * (v - ci.mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    ci.half_width = sd == 0.0 ? 0.0 : t_critical(level, n - 1.0) * sd / std::sqrt(n);
    ci.defined = true;
    return ci;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
    LCAP_REQUIRE(bins > 0, DomainError, "histogram needs at least one bin");
    Histogram h;
    h.counts.assign(bins, 0);
    if (values.empty()) {
        return h;
    }
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    h.lo = *mn;
    h.hi = *mx;
    const double width = (h.hi - h.lo) / static_cast<double>(bins);
    for (double v : values) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = std::min(bins - 1, static_cast<std::size_t>((v - h.lo) / width));
        }
        ++h.counts[b];
    }
    return h;
}

void summarize(CapabilityResult &result) {
    result.losses.clear();
    for (const auto &r : result.runs) {
        result.losses.push_back(r.final_loss);
    }
    result.ci = confidence_interval(result.losses);
    result.mu = result.ci.mean;
    result.histogram = histogram(result.losses);
}

CapabilityResult learning_capability(const AnsatzSpec &spec,
                                     std::span<const FourierSeries> functions,
                                     const TrainConfig &config, std::size_t workers,
                                     std::uint64_t base_seed,
                                     const ProgressCallback &progress) {
    LCAP_REQUIRE(!functions.empty(), DomainError, "function set is empty");
    const std::size_t d = functions.front().degree();
    for (const auto &g : functions) {
        LCAP_REQUIRE(g.degree() == d, DomainError,
                     "all target functions must share one degree");
    }
    config.validate();
    std::visit([](const auto &s) { s.validate(); }, spec);

    CapabilityResult result;
    result.degree = d;
    result.base_seed = base_seed;
    result.runs.resize(functions.size());
    std::mutex progress_mutex;
    parallel_for(functions.size(), workers, [&](std::size_t i) {
        const Circuit circuit = build(spec);
        const std::uint64_t seed = function_seed(base_seed, i);
        CounterRng rng(seed);
        const TrainResult tr = train(circuit, functions[i], config, rng);
        FunctionOutcome out{i, seed, tr.final_validation_loss, tr.epochs_run};
        result.runs[i] = out;
        if (progress) {
            std::lock_guard lock(progress_mutex);
            progress(out);
        }
    });
    summarize(result);
    return result;
}

std::size_t probe_parameter(const Circuit &circuit) {
    for (const auto &op : circuit.ops()) {
        const auto idx = op.trainable_index();
        const auto qs = op.qubits();
        if (idx && std::find(qs.begin(), qs.end(), std::size_t{0}) != qs.end()) {
            return *idx;
        }
    }
    throw DomainError("circuit has no trainable gate on qubit 0");
}

BarrenProbeResult barren_variance(const AnsatzSpec &spec,
                                  std::span<const FourierSeries> functions,
                                  std::size_t trials_per_function, CounterRng &rng,
                                  BarrenMode mode) {
    LCAP_REQUIRE(!functions.empty() && trials_per_function > 0, DomainError,
                 "barren probe needs functions and trials");
    const Circuit circuit = build(spec);
    const std::size_t p = circuit.num_params();
    BarrenProbeResult result;
    result.probe_parameter = probe_parameter(circuit);

    // Welford accumulators, one per parameter.
    std::vector<double> mean(p, 0.0), m2(p, 0.0);
    std::size_t count = 0;
    std::vector<double> params(p);
    for (const auto &g : functions) {
        const auto [train_set, val_set] = make_datasets(g);
        for (std::size_t t = 0; t < trials_per_function; ++t) {
            for (auto &v : params) {
                v = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
            if (mode == BarrenMode::Probe) {
                params[result.probe_parameter] = 0.0;
            }
            const LossAndGradient lg = dataset_loss_and_gradient(
                circuit, params, train_set.xs, train_set.ys);
            ++count;
            for (std::size_t k = 0; k < p; ++k) {
                const double delta = lg.grad[k] - mean[k];
                mean[k] += delta / static_cast<double>(count);
                m2[k] += delta * (lg.grad[k] - mean[k]);
            }
        }
    }
    result.sample_count = count;
    const double n = static_cast<double>(count);
    if (mode == BarrenMode::Probe) {
        result.variance_of_gradient = m2[result.probe_parameter] / n;
    } else {
        double acc = 0.0;
        for (double v : m2) {
            acc += v / n;
        }
        result.variance_of_gradient = acc / static_cast<double>(p);
    }
    return result;
}

CoefficientStudy coefficient_study(const AnsatzSpec &spec, std::size_t d,
                                   std::size_t num_samples, CounterRng &rng) {
    LCAP_REQUIRE(num_samples > 0, DomainError, "need at least one sample");
    const Circuit circuit = build(spec);
    CoefficientStudy study;
    study.samples = sample_circuit_coefficients(circuit, d, num_samples, rng);
    for (std::size_t w = 0; w <= d; ++w) {
        FrequencySummary s;
        s.omega = w;
        std::size_t hits = 0;
        for (const auto &c : study.samples) {
            s.max_abs_re = std::max(s.max_abs_re, std::abs(c[w].real()));
            s.max_abs_im = std::max(s.max_abs_im, std::abs(c[w].imag()));
            if (std::abs(c[w]) > 0.01) {
                ++hits;
            }
        }
        s.fraction_nonzero =
            static_cast<double>(hits) / static_cast<double>(num_samples);
        study.per_frequency.push_back(s);
    }
    return study;
}

void write_capability_table(std::ostream &out, const CapabilityResult &result) {
    out << "index,seed,final_loss,epochs_run\n";
    out << std::setprecision(17);
    for (const auto &r : result.runs) {
        out << r.index << ',' << r.seed << ',' << r.final_loss << ',' << r.epochs_run
            << '\n';
    }
}

} // namespace lcap
