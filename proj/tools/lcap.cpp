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
// Command-line driver: lcap <experiment> --config FILE [--seed N]
// [--workers N] [--out DIR]
#include "lcap/error.hpp"
#include "lcap/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::size_t default_workers() {
    if (const char *env = std::getenv("LCAP_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception &) {
        }
        throw lcap::ConfigError(std::string("LCAP_WORKERS must be a positive integer, got '") +
                                env + "'");
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Learning-capability benchmarks for parametrized quantum circuits"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::string> out_dir;

    for (const auto kind :
         {lcap::ExperimentKind::Capability, lcap::ExperimentKind::Coeffs,
          lcap::ExperimentKind::Barren, lcap::ExperimentKind::Counts,
          lcap::ExperimentKind::FourierGen, lcap::ExperimentKind::Dla,
          lcap::ExperimentKind::NoisyCapability, lcap::ExperimentKind::ShotCapability}) {
        auto *sub = app.add_subcommand(std::string(lcap::to_string(kind)));
        sub->add_option("-c,--config", config_path, "JSON experiment file")->required();
        sub->add_option("--seed", seed, "Base seed (overrides the config)");
        sub->add_option("--workers", workers,
                        "Worker threads (default: config, then LCAP_WORKERS, then all cores)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "Output directory (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const auto kind = lcap::parse_experiment_kind(app.get_subcommands().front()->get_name());
    try {
        lcap::ExperimentConfig config = lcap::load_config(config_path, kind);
        if (seed) {
            config.seed = *seed;
        }
        lcap::RunOptions options;
        options.out_dir = out_dir.value_or(config.output);
        options.workers = workers ? *workers
                                  : (config.workers > 0 ? config.workers : default_workers());
        options.summary = &std::cout;
        options.progress = &std::cerr;
        const auto files = lcap::run_experiment(config, options);
        for (const auto &f : files) {
            std::cerr << "wrote " << (options.out_dir / f).string() << '\n';
        }
        return 0;
    } catch (const lcap::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lcap::SpecError &e) {
        std::cerr << "spec error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
