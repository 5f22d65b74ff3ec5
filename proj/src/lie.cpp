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
#include "lcap/lie.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace lcap {

namespace {

// 0 = I, 1 = X, 2 = Y, 3 = Z.
int letter_code(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

void check_width(std::size_t n) {
    LCAP_REQUIRE(n <= 32, DomainError, "Pauli strings are limited to 32 qubits");
}

} // namespace

PauliString PauliString::single(std::size_t n, std::size_t qubit, char letter) {
    check_width(n);
    LCAP_REQUIRE(qubit < n, DomainError, "qubit index out of range");
    PauliString p{n, 0, 0};
    const std::uint32_t bit = std::uint32_t{1} << qubit;
    switch (letter) {
    case 'I':
        break;
    case 'X':
        p.x = bit;
        break;
    case 'Y':
        p.x = bit;
        p.z = bit;
        break;
    case 'Z':
        p.z = bit;
        break;
    default:
        throw DomainError(std::string("unknown Pauli letter '") + letter + "'");
    }
    return p;
}

PauliString PauliString::parse(std::string_view word) {
    PauliString p{word.size(), 0, 0};
    check_width(word.size());
    for (std::size_t q = 0; q < word.size(); ++q) {
        const PauliString s = single(word.size(), q, word[q]);
        p.x |= s.x;
        p.z |= s.z;
    }
    return p;
}

char PauliString::letter(std::size_t qubit) const {
    return "IXYZ"[letter_code((x >> qubit) & 1U, (z >> qubit) & 1U)];
}

bool PauliString::commutes_with(const PauliString &o) const {
    return std::popcount((x & o.z) ^ (z & o.x)) % 2 == 0;
}

PauliString PauliString::operator*(const PauliString &o) const {
    return {num_qubits, x ^ o.x, z ^ o.z};
}

std::string PauliString::str() const {
    std::string s(num_qubits, 'I');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        s[q] = letter(q);
    }
    return s;
}

AlgebraElement AlgebraElement::from(const PauliString &p, double c) {
    AlgebraElement e{p.num_qubits, {}};
    if (c != 0.0) {
        e.terms[p] = c;
    }
    return e;
}

void AlgebraElement::prune(double tol) {
    std::erase_if(terms, [tol](const auto &kv) { return std::abs(kv.second) <= tol; });
}

std::string AlgebraElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[p, c] : terms) {
        if (!first) {
            os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            os << '-';
        }
        const double a = std::abs(c);
        if (a != 1.0) {
            os << a << '*';
        }
        os << p.str();
        first = false;
    }
    return first ? "0" : os.str();
}

std::optional<std::pair<PauliString, double>> pauli_commutator(const PauliString &p,
                                                               const PauliString &q) {
    LCAP_REQUIRE(p.num_qubits == q.num_qubits, DomainError,
                 "Pauli strings act on different qubit counts");
    if (p.commutes_with(q)) {
        return std::nullopt;
    }
    // PQ = i^k R; letterwise, XY = iZ, YZ = iX, ZX = iY.
    int k = 0;
    for (std::size_t i = 0; i < p.num_qubits; ++i) {
        const int a = letter_code((p.x >> i) & 1U, (p.z >> i) & 1U);
        const int b = letter_code((q.x >> i) & 1U, (q.z >> i) & 1U);
        if (a != 0 && b != 0 && a != b) {
            k += ((b - a + 3) % 3 == 1) ? 1 : 3;
        }
    }
    // Anticommuting strings have k odd: PQ = +-iR and [P, Q] = 2PQ.
    const double c = (k % 4 == 1) ? 2.0 : -2.0;
    return std::make_pair(p * q, c);
}

AlgebraElement lie_bracket(const AlgebraElement &a, const AlgebraElement &b) {
    LCAP_REQUIRE(a.num_qubits == b.num_qubits, DomainError,
                 "elements act on different qubit counts");
    // [iP, iQ] = -[P, Q] = i (-c) R.
    AlgebraElement out{a.num_qubits, {}};
    for (const auto &[p, ca] : a.terms) {
        for (const auto &[q, cb] : b.terms) {
            if (auto r = pauli_commutator(p, q)) {
                out.terms[r->first] -= ca * cb * r->second;
            }
        }
    }
    out.prune(1e-14);
    return out;
}

std::vector<AlgebraElement> generators_for(const Circuit &circuit) {
    const std::size_t n = circuit.num_qubits();
    LCAP_REQUIRE(n <= 32, DomainError, "Pauli strings are limited to 32 qubits");
    std::vector<AlgebraElement> out;
    auto add = [&](AlgebraElement e) {
        if (std::find(out.begin(), out.end(), e) == out.end()) {
            out.push_back(std::move(e));
        }
    };
    auto pair = [&](std::size_t a, std::size_t b, char letter) {
        return PauliString::single(n, a, letter) * PauliString::single(n, b, letter);
    };
    auto controlled = [&](std::size_t c, std::size_t t, char letter) {
        const PauliString u = PauliString::single(n, t, letter);
        AlgebraElement e = AlgebraElement::from(u);
        e.terms[PauliString::single(n, c, 'Z') * u] = -1.0;
        return e;
    };
    for (const auto &op : circuit.ops()) {
        const std::size_t a = op.wires[0];
        const std::size_t b = op.wires[1];
        switch (op.kind) {
        case GateKind::RX:
            add(AlgebraElement::from(PauliString::single(n, a, 'X')));
            break;
        case GateKind::RY:
            add(AlgebraElement::from(PauliString::single(n, a, 'Y')));
            break;
        case GateKind::RZ:
            add(AlgebraElement::from(PauliString::single(n, a, 'Z')));
            break;
        case GateKind::RXX:
            add(AlgebraElement::from(pair(a, b, 'X')));
            break;
        case GateKind::RYY:
            add(AlgebraElement::from(pair(a, b, 'Y')));
            break;
        case GateKind::RZZ:
            add(AlgebraElement::from(pair(a, b, 'Z')));
            break;
        case GateKind::CNOT:
        case GateKind::CRX:
            add(controlled(a, b, 'X'));
            break;
        case GateKind::CZ:
            add(controlled(a, b, 'Z'));
            break;
        case GateKind::H:
            break;
        }
    }
    return out;
}

std::size_t lie_closure(const std::vector<AlgebraElement> &generators,
                        std::size_t max_dim) {
    if (generators.empty()) {
        return 0;
    }
    const std::size_t n = generators.front().num_qubits;
    LCAP_REQUIRE(n <= kMaxLieQubits, DomainError,
                 "Lie closure is limited to " + std::to_string(kMaxLieQubits) +
                     " qubits");
    for (const auto &g : generators) {
        LCAP_REQUIRE(g.num_qubits == n, DomainError,
                     "generators act on different qubit counts");
    }
    const std::size_t len = std::size_t{1} << (2 * n);
    auto index = [n](const PauliString &p) {
        return static_cast<std::size_t>(p.x) | (static_cast<std::size_t>(p.z) << n);
    };

    // Row echelon form: each row is zero at the pivots of earlier rows and 1
    // at its own pivot.
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> pivots;
    std::vector<AlgebraElement> basis;

    auto insert = [&](const AlgebraElement &e) {
        std::vector<double> v(len, 0.0);
        double scale = 0.0;
        for (const auto &[p, c] : e.terms) {
            v[index(p)] = c;
            scale = std::max(scale, std::abs(c));
        }
        if (scale == 0.0) {
            return false;
        }
        for (auto &c : v) {
            c /= scale;
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const double f = v[pivots[r]];
            if (f != 0.0) {
                for (std::size_t k = 0; k < len; ++k) {
                    v[k] -= f * rows[r][k];
                }
                v[pivots[r]] = 0.0;
            }
        }
        std::size_t piv = 0;
        for (std::size_t k = 1; k < len; ++k) {
            if (std::abs(v[k]) > std::abs(v[piv])) {
                piv = k;
            }
        }
        if (std::abs(v[piv]) <= 1e-10) {
            return false;
        }
        const double pv = v[piv];
        for (auto &c : v) {
            c /= pv;
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        AlgebraElement stored = e;
        for (auto &[p, c] : stored.terms) {
            c /= scale;
        }
        basis.push_back(std::move(stored));
        return true;
    };

    for (const auto &g : generators) {
        if (basis.size() >= max_dim) {
            return max_dim;
        }
        insert(g);
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (const auto &g : generators) {
            if (basis.size() >= max_dim) {
                return max_dim;
            }
            const AlgebraElement c = lie_bracket(g, basis[i]);
            if (!c.is_zero()) {
                insert(c);
            }
        }
    }
    return basis.size();
}

} // namespace lcap
