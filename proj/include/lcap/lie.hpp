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
 * Pauli-string algebra and dynamical Lie algebra closures.
 *
 * An AlgebraElement with coefficients c_P stands for the anti-Hermitian
 * operator i * sum_P c_P P.
 */
#pragma once

#include "lcap/circuit.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcap {

/// Tensor product of single-qubit Paulis in symplectic form: qubit q holds
/// X if bit q of x is set, Z if bit q of z is set, Y if both.
struct PauliString {
    std::size_t num_qubits = 0;
    std::uint32_t x = 0;
    std::uint32_t z = 0;

    static PauliString identity(std::size_t n) { return {n, 0, 0}; }
    /// Single letter ('I', 'X', 'Y', 'Z') on one qubit.
    static PauliString single(std::size_t n, std::size_t qubit, char letter);
    /// Letter i of `word` acts on qubit i.
    static PauliString parse(std::string_view word);

    char letter(std::size_t qubit) const;
    bool is_identity() const { return x == 0 && z == 0; }
    bool commutes_with(const PauliString &other) const;
    PauliString operator*(const PauliString &other) const;
    std::string str() const;

    auto operator<=>(const PauliString &) const = default;
};

struct AlgebraElement {
    std::size_t num_qubits = 0;
    std::map<PauliString, double> terms;

    static AlgebraElement from(const PauliString &p, double c = 1.0);
    bool is_zero() const { return terms.empty(); }
    /// Drops coefficients with |c| <= tol.
    void prune(double tol = 0.0);
    std::string str() const;
    bool operator==(const AlgebraElement &) const = default;
};

/// Coefficient c with [P, Q] = i c R, R the Pauli product of P and Q;
/// nullopt when P and Q commute. c is always +-2.
std::optional<std::pair<PauliString, double>> pauli_commutator(const PauliString &p,
                                                               const PauliString &q);

/// [A, B] of the anti-Hermitian operators A and B.
AlgebraElement lie_bracket(const AlgebraElement &a, const AlgebraElement &b);

/**
 * @brief Generators of the circuit's gates, deduplicated.
 *
 * Rotations give their Pauli (or Pauli pair) generator, whatever their
 * binding; CNOT and CRX give X_t - Z_c X_t and CZ gives Z_t - Z_c Z_t. H
 * gates are fixed and contribute nothing.
 */
std::vector<AlgebraElement> generators_for(const Circuit &circuit);

inline constexpr std::size_t kMaxLieQubits = 5;

/**
 * @brief Dimension of the real Lie algebra generated by `generators`.
 *
 * Nested commutators [g, b] of generators g with basis elements b are added
 * until nothing new is independent (pivot tolerance 1e-10) or the dimension
 * reaches max_dim.
 */
std::size_t lie_closure(const std::vector<AlgebraElement> &generators,
                        std::size_t max_dim = SIZE_MAX);

} // namespace lcap
