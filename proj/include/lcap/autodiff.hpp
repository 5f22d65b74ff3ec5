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
 * Gradients of the circuit model f(x; params) and of mean-squared-error
 * losses built on it.
 */
#pragma once

#include "lcap/circuit.hpp"

#include <functional>
#include <span>
#include <vector>

namespace lcap {

using Gradient = std::vector<double>;

struct ValueAndGradient {
    double value = 0.0;
    Gradient grad;
};

/**
 * @brief Value and exact gradient of the model at one input.
 *
 * One forward pass builds the final state; the backward sweep un-applies the
 * gates from both the state and the observable-applied copy, accumulating
 * 2 Re<lambda| (-i/2) G |psi> at every trainable gate.
 */
ValueAndGradient adjoint_gradient(const Circuit &circuit,
                                  std::span<const double> params, double x);

/// Maps a full parameter vector to a (possibly stochastic) model value.
using Evaluator = std::function<double(std::span<const double>)>;

/**
 * @brief Gradient from shifted evaluations.
 *
 * Pauli-rotation parameters use the two-term rule with shifts of +-pi/2.
 * CRX parameters use the four-term rule for generators with spectrum
 * {0, +-1/2}: shifts +-pi/2 and +-3pi/2 with coefficients
 * (sqrt2 +- 1) / (4 sqrt2).
 */
Gradient parameter_shift_gradient(const Circuit &circuit,
                                  std::span<const double> params,
                                  const Evaluator &evaluator);

/// Evaluator backed by exact statevector simulation.
Evaluator analytic_evaluator(const Circuit &circuit, double x);

/// Central differences with step h.
Gradient finite_difference_gradient(const Evaluator &evaluator,
                                    std::span<const double> params,
                                    double h = 1e-5);

struct LossAndGradient {
    double loss = 0.0;
    Gradient grad;
};

/// MSE over (xs, ys) and its gradient, via adjoint differentiation.
LossAndGradient dataset_loss_and_gradient(const Circuit &circuit,
                                          std::span<const double> params,
                                          std::span<const double> xs,
                                          std::span<const double> ys);

/// MSE over (xs, ys) without a gradient.
double dataset_loss(const Circuit &circuit, std::span<const double> params,
                    std::span<const double> xs, std::span<const double> ys);

} // namespace lcap
