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
 * Builders for the layered (data re-uploading) and dQNN circuit families.
 *
 * A layered circuit is W_L S(x) ... W_1 S(x) [W_0], where S(x) applies
 * RX(x) to every qubit and each W consists of `ent_layers` sub-blocks
 * "single-qubit unitary on every qubit, then entangling gates". The last
 * qubit is measured.
 */
#pragma once

#include "lcap/circuit.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lcap {

enum class SingleQubitUnitary { RY, RYRZ, RYRZRY };
enum class EntanglementGate { CZ, CNOT, CRX, CAN };
enum class EntStyle { Linear, Cyclic };
enum class EntStructure { Simple, Strong, Alternating };

/// Rotation gates emitted per application of the single-qubit unitary.
std::size_t rotation_count(SingleQubitUnitary u1);
/// Trainable parameters per placement of an entangling gate.
std::size_t params_per_gate(EntanglementGate gate);
/// Two-qubit gate ops per placement (CAN expands to RXX, RYY, RZZ).
std::size_t ops_per_gate(EntanglementGate gate);

std::string_view to_string(SingleQubitUnitary u1);
std::string_view to_string(EntanglementGate gate);
std::string_view to_string(EntStyle style);
std::string_view to_string(EntStructure structure);
SingleQubitUnitary parse_single_qubit_unitary(std::string_view name);
EntanglementGate parse_entanglement_gate(std::string_view name);
EntStyle parse_ent_style(std::string_view name);
/// Throws SpecError; "strongc14" gets a dedicated diagnostic.
EntStructure parse_ent_structure(std::string_view name);

struct LayeredSpec {
    std::size_t num_qubits = 1;
    std::size_t num_layers = 1;
    bool zero_layer = true;
    SingleQubitUnitary u1 = SingleQubitUnitary::RYRZ;
    EntanglementGate ent_gate = EntanglementGate::CNOT;
    std::size_t ent_layers = 1;
    EntStyle ent_style = EntStyle::Linear;
    EntStructure ent_structure = EntStructure::Simple;

    void validate() const;
    bool operator==(const LayeredSpec &) const = default;
};

struct DqnnSpec {
    /// [i, h_1, ..., h_H, o] with o = 1.
    std::vector<std::size_t> widths{1, 1};
    bool data_reupload = true;
    bool zero_layer = false;
    SingleQubitUnitary u1 = SingleQubitUnitary::RYRZ;

    void validate() const;
    bool operator==(const DqnnSpec &) const = default;
};

using AnsatzSpec = std::variant<LayeredSpec, DqnnSpec>;

struct ResourceCount {
    std::size_t single_qubit_gates = 0;
    std::size_t two_qubit_gates = 0;
    std::size_t trainable_params = 0;
    bool operator==(const ResourceCount &) const = default;
};

/// Control/target pairs placed by entanglement sub-block `block` (1-based).
std::vector<std::pair<std::size_t, std::size_t>>
entangling_pairs(std::size_t num_qubits, std::size_t block, EntStyle style,
                 EntStructure structure);

Circuit build_layered(const LayeredSpec &spec);
Circuit build_dqnn(const DqnnSpec &spec);
Circuit build(const AnsatzSpec &spec);

ResourceCount count_resources(const Circuit &circuit);

/// Number of data-encoding gates; bounds the reachable frequency.
std::size_t max_degree(const Circuit &circuit);

/// Short human-readable label, e.g. "layered(3q,2L,WSW,RYRZ,CRX,el=2,...)".
std::string describe(const AnsatzSpec &spec);

} // namespace lcap
