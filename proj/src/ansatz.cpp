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
#include "lcap/ansatz.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <sstream>

namespace lcap {

namespace {

// Emits gates with consecutive trainable indices.
class Emitter {
  public:
    explicit Emitter(std::size_t num_qubits) : circuit_(num_qubits) {}

    void rotation(GateKind kind, std::size_t q) {
        circuit_.append(make_gate(kind, {q}, Trainable{next_++}));
    }
    void encode(std::size_t q) {
        circuit_.append(make_gate(GateKind::RX, {q}, DataInput{}));
    }
    void single_qubit_unitary(SingleQubitUnitary u1, std::size_t q) {
        rotation(GateKind::RY, q);
        if (u1 != SingleQubitUnitary::RY) {
            rotation(GateKind::RZ, q);
        }
        if (u1 == SingleQubitUnitary::RYRZRY) {
            rotation(GateKind::RY, q);
        }
    }
    void entangler(EntanglementGate gate, std::size_t c, std::size_t t) {
        switch (gate) {
        case EntanglementGate::CZ:
            circuit_.append(make_gate(GateKind::CZ, {c, t}));
            break;
        case EntanglementGate::CNOT:
            circuit_.append(make_gate(GateKind::CNOT, {c, t}));
            break;
        case EntanglementGate::CRX:
            circuit_.append(make_gate(GateKind::CRX, {c, t}, Trainable{next_++}));
            break;
        case EntanglementGate::CAN:
            circuit_.append(make_gate(GateKind::RXX, {c, t}, Trainable{next_++}));
            circuit_.append(make_gate(GateKind::RYY, {c, t}, Trainable{next_++}));
            circuit_.append(make_gate(GateKind::RZZ, {c, t}, Trainable{next_++}));
            break;
        }
    }
    Circuit finish(std::size_t measured) {
        circuit_.set_measured_qubit(measured);
        circuit_.validate();
        return std::move(circuit_);
    }

  private:
    Circuit circuit_;
    std::size_t next_ = 0;
};

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name,
                const std::array<std::pair<Enum, std::string_view>, N> &table,
                std::string_view what) {
    for (const auto &[e, n] : table) {
        if (n == name) {
            return e;
        }
    }
    throw SpecError("unknown " + std::string(what) + " '" + std::string(name) +
                    "'");
}

template <typename Enum, std::size_t N>
std::string_view
name_of(Enum value, const std::array<std::pair<Enum, std::string_view>, N> &table) {
    for (const auto &[e, n] : table) {
        if (e == value) {
            return n;
        }
    }
    return "?";
}

constexpr std::array<std::pair<SingleQubitUnitary, std::string_view>, 3> kU1{{
    {SingleQubitUnitary::RY, "RY"},
    {SingleQubitUnitary::RYRZ, "RYRZ"},
    {SingleQubitUnitary::RYRZRY, "RYRZRY"},
}};
constexpr std::array<std::pair<EntanglementGate, std::string_view>, 4> kEnt{{
    {EntanglementGate::CZ, "CZ"},
    {EntanglementGate::CNOT, "CNOT"},
    {EntanglementGate::CRX, "CRX"},
    {EntanglementGate::CAN, "CAN"},
}};
constexpr std::array<std::pair<EntStyle, std::string_view>, 2> kStyle{{
    {EntStyle::Linear, "linear"},
    {EntStyle::Cyclic, "cyclic"},
}};
constexpr std::array<std::pair<EntStructure, std::string_view>, 3> kStructure{{
    {EntStructure::Simple, "simple"},
    {EntStructure::Strong, "strong"},
    {EntStructure::Alternating, "alternating"},
}};

} // namespace

std::size_t rotation_count(SingleQubitUnitary u1) {
    switch (u1) {
    case SingleQubitUnitary::RY:
        return 1;
    case SingleQubitUnitary::RYRZ:
        return 2;
    case SingleQubitUnitary::RYRZRY:
        return 3;
    }
    return 0;
}

std::size_t params_per_gate(EntanglementGate gate) {
    switch (gate) {
    case EntanglementGate::CRX:
        return 1;
    case EntanglementGate::CAN:
        return 3;
    default:
        return 0;
    }
}

std::size_t ops_per_gate(EntanglementGate gate) {
    return gate == EntanglementGate::CAN ? 3 : 1;
}

std::string_view to_string(SingleQubitUnitary u1) { return name_of(u1, kU1); }
std::string_view to_string(EntanglementGate gate) { return name_of(gate, kEnt); }
std::string_view to_string(EntStyle style) { return name_of(style, kStyle); }
std::string_view to_string(EntStructure s) { return name_of(s, kStructure); }

SingleQubitUnitary parse_single_qubit_unitary(std::string_view name) {
    return parse_enum(name, kU1, "single-qubit unitary");
}
EntanglementGate parse_entanglement_gate(std::string_view name) {
    return parse_enum(name, kEnt, "entanglement gate");
}
EntStyle parse_ent_style(std::string_view name) {
    return parse_enum(name, kStyle, "entanglement style");
}
EntStructure parse_ent_structure(std::string_view name) {
    if (name == "strongc14") {
        throw SpecError("entanglement structure 'strongc14' is not supported: "
                        "it has no self-contained definition");
    }
    return parse_enum(name, kStructure, "entanglement structure");
}

void LayeredSpec::validate() const {
    LCAP_REQUIRE(num_qubits >= 1 && num_qubits <= 16, SpecError,
                 "layered ansatz needs 1..16 qubits");
    LCAP_REQUIRE(num_layers >= 1, SpecError, "layered ansatz needs L >= 1");
    LCAP_REQUIRE(ent_layers >= 1, SpecError,
                 "layered ansatz needs at least one entanglement layer");
}

void DqnnSpec::validate() const {
    LCAP_REQUIRE(widths.size() >= 2, SpecError,
                 "dQNN needs at least an input and an output layer");
    LCAP_REQUIRE(std::all_of(widths.begin(), widths.end(),
                             [](std::size_t w) { return w >= 1; }),
                 SpecError, "dQNN layer widths must be >= 1");
    LCAP_REQUIRE(widths.back() == 1, SpecError,
                 "dQNN output layer must have exactly one qubit");
    std::size_t total = 0;
    for (const auto w : widths) {
        total += w;
    }
    LCAP_REQUIRE(total <= 16, SpecError, "dQNN exceeds 16 qubits");
}

std::vector<std::pair<std::size_t, std::size_t>>
entangling_pairs(std::size_t n, std::size_t block, EntStyle style,
                 EntStructure structure) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (n < 2) {
        return pairs;
    }
    const bool cyclic = style == EntStyle::Cyclic;
    if (structure == EntStructure::Alternating) {
        const std::size_t first = (block % 2 == 1) ? 0 : 1;
        for (std::size_t q = first; q + 1 < n; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
        // Wrap only when both ends are left unpaired by this sub-block.
        if (cyclic && n > 2 && first == 1 && n % 2 == 0) {
            pairs.emplace_back(n - 1, 0);
        }
        return pairs;
    }
    // Ranges cycle through 1..n-1 so that a range never maps a qubit onto
    // itself.
    const std::size_t range =
        structure == EntStructure::Simple ? 1 : ((block - 1) % (n - 1)) + 1;
    // Cyclic places one gate per qubit; linear drops the last one.
    const std::size_t count = (cyclic && n > 2) ? n : n - 1;
    for (std::size_t q = 0; q < count; ++q) {
        pairs.emplace_back(q, (q + range) % n);
    }
    return pairs;
}

Circuit build_layered(const LayeredSpec &spec) {
    spec.validate();
    const std::size_t n = spec.num_qubits;
    Emitter emit(n);
    auto trainable_block = [&]() {
        for (std::size_t b = 1; b <= spec.ent_layers; ++b) {
            for (std::size_t q = 0; q < n; ++q) {
                emit.single_qubit_unitary(spec.u1, q);
            }
            for (const auto &[c, t] :
                 entangling_pairs(n, b, spec.ent_style, spec.ent_structure)) {
                emit.entangler(spec.ent_gate, c, t);
            }
        }
    };
    if (spec.zero_layer) {
        trainable_block();
    }
    for (std::size_t l = 0; l < spec.num_layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            emit.encode(q);
        }
        trainable_block();
    }
    return emit.finish(n - 1);
}

Circuit build_dqnn(const DqnnSpec &spec) {
    spec.validate();
    std::vector<std::size_t> offsets{0};
    for (const auto w : spec.widths) {
        offsets.push_back(offsets.back() + w);
    }
    const std::size_t total = offsets.back();
    Emitter emit(total);
    const std::size_t num_layers = spec.widths.size();
    for (std::size_t layer = 0; layer + 1 < num_layers; ++layer) {
        const bool encodes = layer == 0 || spec.data_reupload;
        for (std::size_t q = offsets[layer]; q < offsets[layer + 1]; ++q) {
            if (spec.zero_layer) {
                emit.single_qubit_unitary(spec.u1, q);
            }
            if (encodes) {
                emit.encode(q);
            }
            emit.single_qubit_unitary(spec.u1, q);
        }
        for (std::size_t src = offsets[layer]; src < offsets[layer + 1]; ++src) {
            for (std::size_t dst = offsets[layer + 1]; dst < offsets[layer + 2];
                 ++dst) {
                emit.entangler(EntanglementGate::CAN, src, dst);
            }
        }
    }
    const std::size_t out = total - 1;
    emit.single_qubit_unitary(spec.u1, out);
    if (spec.zero_layer) {
        emit.single_qubit_unitary(spec.u1, out);
    }
    return emit.finish(out);
}

Circuit build(const AnsatzSpec &spec) {
    return std::visit(
        [](const auto &s) -> Circuit {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LayeredSpec>) {
                return build_layered(s);
            } else {
                return build_dqnn(s);
            }
        },
        spec);
}

ResourceCount count_resources(const Circuit &circuit) {
    ResourceCount rc;
    for (const auto &op : circuit.ops()) {
        if (arity(op.kind) == 1) {
            ++rc.single_qubit_gates;
        } else {
            ++rc.two_qubit_gates;
        }
    }
    rc.trainable_params = circuit.num_params();
    return rc;
}

std::size_t max_degree(const Circuit &circuit) {
    return static_cast<std::size_t>(
        std::count_if(circuit.ops().begin(), circuit.ops().end(),
                      [](const GateOp &op) { return op.is_data_input(); }));
}

std::string describe(const AnsatzSpec &spec) {
    std::ostringstream os;
    if (const auto *l = std::get_if<LayeredSpec>(&spec)) {
        os << "layered(" << l->num_qubits << "q," << l->num_layers << "L,"
           << (l->zero_layer ? "WSW" : "SW") << ',' << to_string(l->u1) << ','
           << to_string(l->ent_gate) << ",el=" << l->ent_layers << ','
           << to_string(l->ent_style) << ',' << to_string(l->ent_structure)
           << ')';
    } else {
        const auto &d = std::get<DqnnSpec>(spec);
        os << "dqnn([";
        for (std::size_t i = 0; i < d.widths.size(); ++i) {
            os << (i ? "," : "") << d.widths[i];
        }
        os << "]," << to_string(d.u1) << (d.data_reupload ? ",reupload" : "")
           << (d.zero_layer ? ",zl" : "") << ')';
    }
    return os.str();
}

} // namespace lcap
