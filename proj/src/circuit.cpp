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
#include "lcap/circuit.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace lcap {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kGateNames{{
    {GateKind::RX, "RX"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::H, "H"},
    {GateKind::CZ, "CZ"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::CRX, "CRX"},
    {GateKind::RXX, "RXX"},
    {GateKind::RYY, "RYY"},
    {GateKind::RZZ, "RZZ"},
}};

const Complex kI{0.0, 1.0};

GateMatrix identity(std::size_t dim) {
    GateMatrix g;
    g.dim = dim;
    for (std::size_t i = 0; i < dim; ++i) {
        g(i, i) = 1.0;
    }
    return g;
}

GateMatrix pauli(char p) {
    GateMatrix g;
    switch (p) {
    case 'X':
        g(0, 1) = 1.0;
        g(1, 0) = 1.0;
        break;
    case 'Y':
        g(0, 1) = -kI;
        g(1, 0) = kI;
        break;
    case 'Z':
        g(0, 0) = 1.0;
        g(1, 1) = -1.0;
        break;
    default:
        g = identity(2);
    }
    return g;
}

GateMatrix kron(const GateMatrix &a, const GateMatrix &b) {
    GateMatrix g;
    g.dim = 4;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            g(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
        }
    }
    return g;
}

// exp(-i t/2 P) for an involutory P: cos(t/2) I - i sin(t/2) P.
GateMatrix pauli_rotation(const GateMatrix &p, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    GateMatrix g = identity(p.dim);
    for (std::size_t i = 0; i < p.dim * p.dim; ++i) {
        g.m[i] = c * g.m[i] - kI * s * p.m[i];
    }
    return g;
}

inline std::size_t insert_zero_bit(std::size_t k, std::size_t bit) {
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

} // namespace

std::string_view to_string(GateKind kind) {
    for (const auto &[k, name] : kGateNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (const auto &[k, n] : kGateNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

GateMatrix GateMatrix::adjoint() const {
    GateMatrix g;
    g.dim = dim;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            g(r, c) = std::conj((*this)(c, r));
        }
    }
    return g;
}

GateMatrix GateMatrix::conj() const {
    GateMatrix g = *this;
    for (auto &v : g.m) {
        v = std::conj(v);
    }
    return g;
}

GateMatrix operator*(const GateMatrix &a, const GateMatrix &b) {
    GateMatrix g;
    g.dim = a.dim;
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t c = 0; c < a.dim; ++c) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < a.dim; ++k) {
                acc += a(r, k) * b(k, c);
            }
            g(r, c) = acc;
        }
    }
    return g;
}

GateMatrix gate_matrix(GateKind kind, std::optional<double> angle) {
    if (is_parametrized(kind) != angle.has_value()) {
        throw InvalidGateError(std::string(to_string(kind)) +
                               (angle ? " takes no angle" : " needs an angle"));
    }
    switch (kind) {
    case GateKind::RX:
        return pauli_rotation(pauli('X'), *angle);
    case GateKind::RY:
        return pauli_rotation(pauli('Y'), *angle);
    case GateKind::RZ:
        return pauli_rotation(pauli('Z'), *angle);
    case GateKind::RXX:
        return pauli_rotation(kron(pauli('X'), pauli('X')), *angle);
    case GateKind::RYY:
        return pauli_rotation(kron(pauli('Y'), pauli('Y')), *angle);
    case GateKind::RZZ:
        return pauli_rotation(kron(pauli('Z'), pauli('Z')), *angle);
    case GateKind::H: {
        GateMatrix g;
        const double s = 1.0 / std::sqrt(2.0);
        g(0, 0) = s;
        g(0, 1) = s;
        g(1, 0) = s;
        g(1, 1) = -s;
        return g;
    }
    case GateKind::CZ: {
        GateMatrix g = identity(4);
        g(3, 3) = -1.0;
        return g;
    }
    case GateKind::CNOT: {
        GateMatrix g;
        g.dim = 4;
        g(0, 0) = 1.0;
        g(1, 1) = 1.0;
        g(2, 3) = 1.0;
        g(3, 2) = 1.0;
        return g;
    }
    case GateKind::CRX: {
        GateMatrix g = identity(4);
        const GateMatrix rx = pauli_rotation(pauli('X'), *angle);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                g(2 + r, 2 + c) = rx(r, c);
            }
        }
        return g;
    }
    }
    throw InvalidGateError("unknown gate kind");
}

GateMatrix generator_matrix(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return pauli('X');
    case GateKind::RY:
        return pauli('Y');
    case GateKind::RZ:
        return pauli('Z');
    case GateKind::RXX:
        return kron(pauli('X'), pauli('X'));
    case GateKind::RYY:
        return kron(pauli('Y'), pauli('Y'));
    case GateKind::RZZ:
        return kron(pauli('Z'), pauli('Z'));
    case GateKind::CRX: {
        GateMatrix proj;
        proj(1, 1) = 1.0;
        return kron(proj, pauli('X'));
    }
    default:
        throw InvalidGateError(std::string(to_string(kind)) +
                               " has no generator");
    }
}

std::optional<std::size_t> GateOp::trainable_index() const {
    if (binding) {
        if (const auto *t = std::get_if<Trainable>(&*binding)) {
            return t->index;
        }
    }
    return std::nullopt;
}

bool GateOp::is_data_input() const {
    return binding && std::holds_alternative<DataInput>(*binding);
}

GateOp make_gate(GateKind kind, std::initializer_list<std::size_t> qubits,
                 std::optional<ParamBinding> binding) {
    if (qubits.size() != arity(kind)) {
        throw InvalidGateError(std::string(to_string(kind)) + " acts on " +
                               std::to_string(arity(kind)) + " qubit(s)");
    }
    GateOp op;
    op.kind = kind;
    std::copy(qubits.begin(), qubits.end(), op.wires.begin());
    op.binding = std::move(binding);
    return op;
}

Circuit::Circuit(std::size_t num_qubits)
    : num_qubits_(num_qubits), measured_qubit_(num_qubits - 1) {
    LCAP_REQUIRE(num_qubits >= 1 && num_qubits <= 16, SpecError,
                 "circuits support 1..16 qubits");
}

Circuit &Circuit::append(GateOp op) {
    const auto qs = op.qubits();
    for (const auto q : qs) {
        LCAP_REQUIRE(q < num_qubits_, InvalidGateError,
                     "gate wire " + std::to_string(q) + " out of range");
    }
    LCAP_REQUIRE(qs.size() == 1 || qs[0] != qs[1], InvalidGateError,
                 "two-qubit gate on identical wires");
    LCAP_REQUIRE(is_parametrized(op.kind) == op.binding.has_value(),
                 InvalidGateError,
                 std::string(to_string(op.kind)) +
                     (op.binding ? " takes no parameter" : " needs a binding"));
    if (const auto idx = op.trainable_index()) {
        num_params_ = std::max(num_params_, *idx + 1);
    }
    ops_.push_back(std::move(op));
    return *this;
}

void Circuit::set_measured_qubit(std::size_t qubit) {
    LCAP_REQUIRE(qubit < num_qubits_, SpecError, "measured qubit out of range");
    measured_qubit_ = qubit;
}

void Circuit::validate() const {
    std::vector<bool> seen(num_params_, false);
    for (const auto &op : ops_) {
        if (const auto idx = op.trainable_index()) {
            seen[*idx] = true;
        }
    }
    LCAP_REQUIRE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
                 BindingError, "trainable indices are not contiguous");
}

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    LCAP_REQUIRE(amps_.size() == (std::size_t{1} << num_qubits), DomainError,
                 "amplitude count must be 2^num_qubits");
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

namespace kernels {

void apply_1q(std::span<Complex> amps, std::size_t qubit, const GateMatrix &u) {
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t half = amps.size() / 2;
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero_bit(k, qubit);
        const std::size_t i1 = i0 | mask;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = u00 * a0 + u01 * a1;
        amps[i1] = u10 * a0 + u11 * a1;
    }
}

void apply_2q(std::span<Complex> amps, std::size_t q0, std::size_t q1,
              const GateMatrix &u) {
    const std::size_t lo = std::min(q0, q1);
    const std::size_t hi = std::max(q0, q1);
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t quarter = amps.size() / 4;
    const std::array<std::size_t, 4> offs{0, m1, m0, m0 | m1};
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
        std::array<Complex, 4> in;
        for (std::size_t j = 0; j < 4; ++j) {
            in[j] = amps[base | offs[j]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            amps[base | offs[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] +
                                   u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

void apply_matrix(std::span<Complex> amps, std::span<const std::size_t> qubits,
                  const GateMatrix &u) {
    if (qubits.size() == 1) {
        apply_1q(amps, qubits[0], u);
    } else {
        apply_2q(amps, qubits[0], qubits[1], u);
    }
}

} // namespace kernels

double resolve_angle(const GateOp &op, std::span<const double> params,
                     double x) {
    return std::visit(
        [&](const auto &b) -> double {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, Fixed>) {
                return b.angle;
            } else if constexpr (std::is_same_v<B, Trainable>) {
                if (b.index >= params.size()) {
                    throw BindingError("trainable index " +
                                       std::to_string(b.index) +
                                       " exceeds parameter count " +
                                       std::to_string(params.size()));
                }
                return params[b.index];
            } else {
                return x;
            }
        },
        *op.binding);
}

void apply_gate(StateVector &state, const GateOp &op,
                std::span<const double> params, double x, bool inverse) {
    auto amps = state.amplitudes();
    const auto qs = op.qubits();
    for (const auto q : qs) {
        LCAP_REQUIRE(q < state.num_qubits(), InvalidGateError,
                     "gate wire out of range for state");
    }
    // Diagonal and permutation gates skip the dense kernel.
    switch (op.kind) {
    case GateKind::CZ: {
        const std::size_t m = (std::size_t{1} << qs[0]) | (std::size_t{1} << qs[1]);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & m) == m) {
                amps[i] = -amps[i];
            }
        }
        return;
    }
    case GateKind::CNOT: {
        const std::size_t mc = std::size_t{1} << qs[0];
        const std::size_t mt = std::size_t{1} << qs[1];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & mc) && !(i & mt)) {
                std::swap(amps[i], amps[i | mt]);
            }
        }
        return;
    }
    case GateKind::RZ: {
        const double t = resolve_angle(op, params, x) * (inverse ? -1.0 : 1.0);
        const Complex p0 = std::polar(1.0, -t / 2);
        const Complex p1 = std::conj(p0);
        const std::size_t m = std::size_t{1} << qs[0];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] *= (i & m) ? p1 : p0;
        }
        return;
    }
    case GateKind::RZZ: {
        const double t = resolve_angle(op, params, x) * (inverse ? -1.0 : 1.0);
        const Complex same = std::polar(1.0, -t / 2);
        const Complex diff = std::conj(same);
        const std::size_t m0 = std::size_t{1} << qs[0];
        const std::size_t m1 = std::size_t{1} << qs[1];
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const bool parity = ((i & m0) != 0) != ((i & m1) != 0);
            amps[i] *= parity ? diff : same;
        }
        return;
    }
    default:
        break;
    }
    std::optional<double> angle;
    if (is_parametrized(op.kind)) {
        angle = resolve_angle(op, params, x) * (inverse ? -1.0 : 1.0);
    }
    kernels::apply_matrix(amps, qs, gate_matrix(op.kind, angle));
}

void apply_generator(StateVector &state, const GateOp &op) {
    GateMatrix g = generator_matrix(op.kind);
    for (auto &v : g.m) {
        v *= Complex{0.0, -0.5};
    }
    kernels::apply_matrix(state.amplitudes(), op.qubits(), g);
}

StateVector run(const Circuit &circuit, std::span<const double> params,
                double x) {
    StateVector state(circuit.num_qubits());
    for (const auto &op : circuit.ops()) {
        apply_gate(state, op, params, x);
    }
    return state;
}

double expectation_z(const StateVector &state, std::size_t qubit) {
    LCAP_REQUIRE(qubit < state.num_qubits(), DomainError,
                 "qubit index out of range");
    const std::size_t m = std::size_t{1} << qubit;
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += (i & m) ? -std::norm(amps[i]) : std::norm(amps[i]);
    }
    return std::clamp(acc, -1.0, 1.0);
}

double model_value(const Circuit &circuit, std::span<const double> params,
                   double x) {
    return expectation_z(run(circuit, params, x), circuit.measured_qubit());
}

} // namespace lcap
