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
 * Gate set, circuit representation and dense statevector simulation.
 *
 * Conventions used throughout the library:
 *  - rotations are R_P(t) = exp(-i t/2 P); two-qubit rotations are
 *    R_PP(t) = exp(-i t/2 P(x)P); CRX(t) = |0><0| (x) I + |1><1| (x) RX(t).
 *  - bit i of a basis-state index addresses qubit i (qubit 0 is the top wire).
 *  - a 4x4 two-qubit matrix acting on wires (a, b) is indexed by
 *    2 * bit(a) + bit(b), i.e. the first wire is the most significant.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace lcap {

using Complex = std::complex<double>;

enum class GateKind { RX, RY, RZ, H, CZ, CNOT, CRX, RXX, RYY, RZZ };

constexpr std::size_t arity(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
        return 1;
    default:
        return 2;
    }
}

constexpr bool is_parametrized(GateKind kind) {
    return !(kind == GateKind::H || kind == GateKind::CZ ||
             kind == GateKind::CNOT);
}

std::string_view to_string(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

/// Fixed angle in radians.
struct Fixed {
    double angle = 0.0;
    bool operator==(const Fixed &) const = default;
};
/// Angle read from the trainable parameter vector.
struct Trainable {
    std::size_t index = 0;
    bool operator==(const Trainable &) const = default;
};
/// Angle equal to the classical input x.
struct DataInput {
    bool operator==(const DataInput &) const = default;
};
using ParamBinding = std::variant<Fixed, Trainable, DataInput>;

/// Dense 2x2 or 4x4 matrix, row-major.
struct GateMatrix {
    std::size_t dim = 2;
    std::array<Complex, 16> m{};

    Complex &operator()(std::size_t r, std::size_t c) { return m[r * dim + c]; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return m[r * dim + c];
    }
    GateMatrix adjoint() const;
    GateMatrix conj() const;
};

GateMatrix operator*(const GateMatrix &a, const GateMatrix &b);

/// Unitary of a gate. Throws InvalidGateError if the angle presence does not
/// match the gate kind.
GateMatrix gate_matrix(GateKind kind, std::optional<double> angle);

/// Hermitian generator G with U(t) = exp(-i t/2 G). Only for parametrized
/// kinds; for CRX this is |1><1| (x) X.
GateMatrix generator_matrix(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::H;
    std::array<std::size_t, 2> wires{};
    std::optional<ParamBinding> binding;

    std::span<const std::size_t> qubits() const {
        return {wires.data(), arity(kind)};
    }
    std::optional<std::size_t> trainable_index() const;
    bool is_data_input() const;
    bool operator==(const GateOp &) const = default;
};

GateOp make_gate(GateKind kind, std::initializer_list<std::size_t> qubits,
                 std::optional<ParamBinding> binding = std::nullopt);

/// Ordered gate list over a fixed register with one measured qubit.
class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits);

    /// Appends a gate after checking arity, wire range and binding.
    Circuit &append(GateOp op);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_params() const { return num_params_; }
    std::size_t measured_qubit() const { return measured_qubit_; }
    void set_measured_qubit(std::size_t qubit);
    std::span<const GateOp> ops() const { return ops_; }

    /// Checks that trainable indices form the contiguous set 0..p-1.
    void validate() const;

  private:
    std::size_t num_qubits_;
    std::size_t measured_qubit_;
    std::size_t num_params_ = 0;
    std::vector<GateOp> ops_;
};

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<Complex> amplitudes() { return amps_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm_squared() const;

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

namespace kernels {
/// Applies a 2x2 matrix to `qubit` of a dense register.
void apply_1q(std::span<Complex> amps, std::size_t qubit, const GateMatrix &u);
/// Applies a 4x4 matrix to wires (q0, q1); q0 is the most significant.
void apply_2q(std::span<Complex> amps, std::size_t q0, std::size_t q1,
              const GateMatrix &u);
void apply_matrix(std::span<Complex> amps, std::span<const std::size_t> qubits,
                  const GateMatrix &u);
} // namespace kernels

/// Angle bound to `op` for the given parameters and input. Throws
/// BindingError for out-of-range trainable indices.
double resolve_angle(const GateOp &op, std::span<const double> params,
                     double x);

/// Applies op (or its inverse) to `state` in place.
void apply_gate(StateVector &state, const GateOp &op,
                std::span<const double> params, double x, bool inverse = false);

/// Applies (-i/2) G to `state` in place, G the generator of op's kind.
void apply_generator(StateVector &state, const GateOp &op);

StateVector run(const Circuit &circuit, std::span<const double> params,
                double x);

/// <Z_qubit> of a pure state.
double expectation_z(const StateVector &state, std::size_t qubit);

/// f(x) = <0|U^dag(x, params) Z_m U(x, params)|0>.
double model_value(const Circuit &circuit, std::span<const double> params,
                   double x);

} // namespace lcap
