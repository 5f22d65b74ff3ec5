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
#pragma once

#include "lcap/circuit.hpp"
#include "lcap/rng.hpp"

#include <cstdint>

namespace lcap {

struct ShotConfig {
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    bool operator==(const ShotConfig &) const = default;
};

/// Binomial(n, p) by inversion, searching outward from the mode.
std::uint64_t sample_binomial(std::uint64_t n, double p, CounterRng &rng);

/// Estimate of <Z> from `shots` measurements of a state whose exact
/// expectation is `exact_z`.
double sample_from_expectation(double exact_z, std::uint64_t shots,
                               CounterRng &rng);

double sample_expectation_z(const StateVector &state, std::size_t qubit,
                            std::uint64_t shots, CounterRng &rng);

} // namespace lcap
