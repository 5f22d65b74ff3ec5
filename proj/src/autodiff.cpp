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
#include "lcap/autodiff.hpp"

#include "lcap/error.hpp"

#include <cmath>
#include <numbers>

namespace lcap {

namespace {

double inner_real(std::span<const Complex> a, std::span<const Complex> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    return acc;
}

} // namespace

ValueAndGradient adjoint_gradient(const Circuit &circuit,
                                  std::span<const double> params, double x) {
    LCAP_REQUIRE(params.size() >= circuit.num_params(), BindingError,
                 "parameter vector shorter than circuit parameter count");
    ValueAndGradient out;
    out.grad.assign(circuit.num_params(), 0.0);

    StateVector psi = run(circuit, params, x);
    const std::size_t m = circuit.measured_qubit();
    out.value = expectation_z(psi, m);
    if (circuit.num_params() == 0) {
        return out;
    }

    StateVector lambda = psi;
    {
        const std::size_t mask = std::size_t{1} << m;
        auto amps = lambda.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & mask) {
                amps[i] = -amps[i];
            }
        }
    }

    StateVector mu(circuit.num_qubits());
    const auto ops = circuit.ops();
    for (std::size_t k = ops.size(); k-- > 0;) {
        const GateOp &op = ops[k];
        if (const auto idx = op.trainable_index()) {
            mu = psi;
            apply_generator(mu, op);
            out.grad[*idx] += 2.0 * inner_real(lambda.amplitudes(), mu.amplitudes());
        }
        apply_gate(psi, op, params, x, /*inverse=*/true);
        apply_gate(lambda, op, params, x, /*inverse=*/true);
    }
    return out;
}

Evaluator analytic_evaluator(const Circuit &circuit, double x) {
    return [&circuit, x](std::span<const double> p) {
        return model_value(circuit, p, x);
    };
}

Gradient parameter_shift_gradient(const Circuit &circuit,
                                  std::span<const double> params,
                                  const Evaluator &evaluator) {
    LCAP_REQUIRE(params.size() >= circuit.num_params(), BindingError,
                 "parameter vector shorter than circuit parameter count");
    constexpr double half_pi = std::numbers::pi / 2;
    const double c_plus = (std::sqrt(2.0) + 1.0) / (4.0 * std::sqrt(2.0));
    const double c_minus = (std::sqrt(2.0) - 1.0) / (4.0 * std::sqrt(2.0));

    Gradient grad(circuit.num_params(), 0.0);
    std::vector<double> shifted(params.begin(), params.end());
    auto eval_at = [&](std::size_t idx, double delta) {
        shifted[idx] = params[idx] + delta;
        const double v = evaluator(shifted);
        shifted[idx] = params[idx];
        return v;
    };
    for (const auto &op : circuit.ops()) {
        const auto idx = op.trainable_index();
        if (!idx) {
            continue;
        }
        if (op.kind == GateKind::CRX) {
            grad[*idx] += c_plus * (eval_at(*idx, half_pi) - eval_at(*idx, -half_pi)) -
                          c_minus * (eval_at(*idx, 3 * half_pi) -
                                     eval_at(*idx, -3 * half_pi));
        } else {
            grad[*idx] += 0.5 * (eval_at(*idx, half_pi) - eval_at(*idx, -half_pi));
        }
    }
    return grad;
}

Gradient finite_difference_gradient(const Evaluator &evaluator,
                                    std::span<const double> params, double h) {
    Gradient grad(params.size());
    std::vector<double> p(params.begin(), params.end());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = params[i] + h;
        const double up = evaluator(p);
        p[i] = params[i] - h;
        const double down = evaluator(p);
        p[i] = params[i];
        grad[i] = (up - down) / (2 * h);
    }
    return grad;
}

LossAndGradient dataset_loss_and_gradient(const Circuit &circuit,
                                          std::span<const double> params,
                                          std::span<const double> xs,
                                          std::span<const double> ys) {
    LCAP_REQUIRE(!xs.empty() && xs.size() == ys.size(), DomainError,
                 "dataset must be non-empty with matching xs/ys");
    LossAndGradient out;
    out.grad.assign(circuit.num_params(), 0.0);
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto vg = adjoint_gradient(circuit, params, xs[i]);
        const double r = vg.value - ys[i];
        out.loss += r * r;
        for (std::size_t k = 0; k < out.grad.size(); ++k) {
            out.grad[k] += 2.0 * r * vg.grad[k];
        }
    }
    out.loss /= n;
    for (auto &g : out.grad) {
        g /= n;
    }
    return out;
}

double dataset_loss(const Circuit &circuit, std::span<const double> params,
                    std::span<const double> xs, std::span<const double> ys) {
    LCAP_REQUIRE(!xs.empty() && xs.size() == ys.size(), DomainError,
                 "dataset must be non-empty with matching xs/ys");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = model_value(circuit, params, xs[i]) - ys[i];
        acc += r * r;
    }
    return acc / static_cast<double>(xs.size());
}

} // namespace lcap
