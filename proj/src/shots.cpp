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
#include "lcap/shots.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <cmath>

namespace lcap {

std::uint64_t sample_binomial(std::uint64_t n, double p, CounterRng &rng) {
    if (n == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    if (p > 0.5) {
        return n - sample_binomial(n, 1.0 - p, rng);
    }
    const double u = rng.uniform();
    const double nd = static_cast<double>(n);
    const double q = 1.0 - p;
    const double ratio = p / q;
    const auto mode = std::min<std::uint64_t>(
        n, static_cast<std::uint64_t>(std::floor((nd + 1.0) * p)));
    const double md = static_cast<double>(mode);
    const double pmf_mode =
        std::exp(std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) -
                 std::lgamma(nd - md + 1.0) + md * std::log(p) +
                 (nd - md) * std::log1p(-p));

    // CDF at the mode, summing the lower tail until terms vanish.
    double cdf_mode = pmf_mode;
    {
        double term = pmf_mode;
        for (std::uint64_t k = mode; k > 0; --k) {
            term *= static_cast<double>(k) / ((nd - static_cast<double>(k) + 1.0) * ratio);
            cdf_mode += term;
            if (term < 1e-18 * cdf_mode) {
                break;
            }
        }
    }

    std::uint64_t k = mode;
    double pmf = pmf_mode;
    double cdf = cdf_mode;
    if (u <= cdf) {
        // Smallest k with F(k) >= u: step down while F(k-1) >= u.
        while (k > 0 && cdf - pmf >= u) {
            cdf -= pmf;
            pmf *= static_cast<double>(k) / ((nd - static_cast<double>(k) + 1.0) * ratio);
            --k;
        }
    } else {
        while (k < n && cdf < u) {
            ++k;
            pmf *= (nd - static_cast<double>(k) + 1.0) / static_cast<double>(k) * ratio;
            cdf += pmf;
            if (pmf == 0.0) {
                break;
            }
        }
    }
    return k;
}

double sample_from_expectation(double exact_z, std::uint64_t shots,
                               CounterRng &rng) {
    LCAP_REQUIRE(shots > 0, DomainError, "shots must be positive");
    const double p1 = std::clamp((1.0 - exact_z) / 2.0, 0.0, 1.0);
    const std::uint64_t ones = sample_binomial(shots, p1, rng);
    return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(shots);
}

double sample_expectation_z(const StateVector &state, std::size_t qubit,
                            std::uint64_t shots, CounterRng &rng) {
    return sample_from_expectation(expectation_z(state, qubit), shots, rng);
}

} // namespace lcap
