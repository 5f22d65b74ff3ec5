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
#include "lcap/noise.hpp"

#include "lcap/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace lcap {

namespace {

GateMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    GateMatrix g;
    g(0, 0) = a;
    g(0, 1) = b;
    g(1, 0) = c;
    g(1, 1) = d;
    return g;
}

void require_probability(double p, const char *what) {
    LCAP_REQUIRE(p >= 0.0 && p <= 1.0, DomainError,
                 std::string(what) + " must lie in [0, 1]");
}

} // namespace

DensityMatrix::DensityMatrix(std::size_t num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits),
      entries_(dim_ * dim_) {
    entries_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_state(const StateVector &psi) {
    DensityMatrix rho(psi.num_qubits());
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

void DensityMatrix::apply_unitary(std::span<const std::size_t> qubits,
                                  const GateMatrix &u) {
    apply_operator(qubits, u);
}

void DensityMatrix::apply_operator(std::span<const std::size_t> qubits,
                                   const GateMatrix &k) {
    kernels::apply_matrix(entries_, qubits, k);
    std::array<std::size_t, 2> cols{};
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        cols[i] = qubits[i] + num_qubits_;
    }
    kernels::apply_matrix(entries_, std::span(cols.data(), qubits.size()),
                          k.conj());
}

Complex DensityMatrix::trace() const {
    Complex acc = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        acc += (*this)(r, r);
    }
    return acc;
}

double DensityMatrix::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return err;
}

double DensityMatrix::expectation_z(std::size_t qubit) const {
    LCAP_REQUIRE(qubit < num_qubits_, DomainError, "qubit index out of range");
    const std::size_t m = std::size_t{1} << qubit;
    double acc = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        const double p = (*this)(r, r).real();
        acc += (r & m) ? -p : p;
    }
    return acc;
}

double KrausChannel::completeness_error() const {
    GateMatrix sum;
    for (const auto &k : operators) {
        const GateMatrix kk = k.adjoint() * k;
        for (std::size_t i = 0; i < 4; ++i) {
            sum.m[i] += kk.m[i];
        }
    }
    double err = 0.0;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            err = std::max(err, std::abs(sum(r, c) - (r == c ? 1.0 : 0.0)));
        }
    }
    return err;
}

void KrausChannel::apply(DensityMatrix &rho, std::size_t qubit) const {
    if (operators.size() == 1) {
        const std::array<std::size_t, 1> q{qubit};
        rho.apply_operator(q, operators[0]);
        return;
    }
    const std::vector<Complex> original(rho.raw().begin(), rho.raw().end());
    std::vector<Complex> acc(original.size());
    DensityMatrix work = rho;
    const std::array<std::size_t, 1> q{qubit};
    for (const auto &k : operators) {
        std::copy(original.begin(), original.end(), work.raw().begin());
        work.apply_operator(q, k);
        const auto w = work.raw();
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += w[i];
        }
    }
    std::copy(acc.begin(), acc.end(), rho.raw().begin());
}

KrausChannel KrausChannel::compose(const KrausChannel &second,
                                   const KrausChannel &first) {
    KrausChannel out;
    for (const auto &b : second.operators) {
        for (const auto &a : first.operators) {
            out.operators.push_back(b * a);
        }
    }
    return out;
}

KrausChannel amplitude_damping(double gamma) {
    require_probability(gamma, "amplitude damping gamma");
    return {{mat2(1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)),
             mat2(0.0, std::sqrt(gamma), 0.0, 0.0)}};
}

KrausChannel phase_damping(double gamma) {
    require_probability(gamma, "phase damping gamma");
    return {{mat2(1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)),
             mat2(0.0, 0.0, 0.0, std::sqrt(gamma))}};
}

KrausChannel depolarizing(double p) {
    require_probability(p, "depolarizing probability");
    const double a = std::sqrt(1.0 - p);
    const double b = std::sqrt(p / 3.0);
    const Complex i{0.0, 1.0};
    return {{mat2(a, 0.0, 0.0, a), mat2(0.0, b, b, 0.0),
             mat2(0.0, -i * b, i * b, 0.0), mat2(b, 0.0, 0.0, -b)}};
}

KrausChannel bit_flip(double p) {
    require_probability(p, "bit flip probability");
    const double a = std::sqrt(1.0 - p);
    const double b = std::sqrt(p);
    return {{mat2(a, 0.0, 0.0, a), mat2(0.0, b, b, 0.0)}};
}

double amplitude_damping_gamma(double t_ns, double t1_us) {
    LCAP_REQUIRE(t_ns >= 0.0 && t1_us > 0.0, DomainError,
                 "need t >= 0 and T1 > 0");
    return -std::expm1(-(t_ns * 1e-3) / t1_us);
}

double phase_damping_gamma(double t_ns, double t1_us, double t2_us,
                           PhaseDampingForm form) {
    LCAP_REQUIRE(t_ns >= 0.0 && t1_us > 0.0 && t2_us > 0.0, DomainError,
                 "need t >= 0, T1 > 0 and T2 > 0");
    const double t = t_ns * 1e-3;
    double gamma = 0.0;
    if (form == PhaseDampingForm::ConsistentWithT2) {
        gamma = -std::expm1(t / t1_us - 2.0 * t / t2_us);
    } else {
        gamma = std::exp(-t / t1_us) - std::exp(-2.0 * t / t2_us);
    }
    // T2 > 2 T1 is unphysical; treat the excess as no extra dephasing.
    return std::clamp(gamma, 0.0, 1.0);
}

KrausChannel thermal_relaxation(double t_ns, double t1_us, double t2_us,
                                PhaseDampingForm form) {
    return KrausChannel::compose(
        phase_damping(phase_damping_gamma(t_ns, t1_us, t2_us, form)),
        amplitude_damping(amplitude_damping_gamma(t_ns, t1_us)));
}

double average_fidelity_tr(double t_ns, double t1_us, double t2_us) {
    const double t = t_ns * 1e-3;
    return 0.5 + std::exp(-t / t1_us) / 6.0 + std::exp(-t / t2_us) / 3.0;
}

double average_fidelity(const KrausChannel &channel) {
    const Complex i{0.0, 1.0};
    const std::array<GateMatrix, 3> paulis{mat2(0.0, 1.0, 1.0, 0.0),
                                           mat2(0.0, -i, i, 0.0),
                                           mat2(1.0, 0.0, 0.0, -1.0)};
    double diag = 0.0;
    for (const auto &p : paulis) {
        GateMatrix out;
        for (const auto &k : channel.operators) {
            const GateMatrix t = k * p * k.adjoint();
            for (std::size_t j = 0; j < 4; ++j) {
                out.m[j] += t.m[j];
            }
        }
        const GateMatrix prod = p * out;
        diag += 0.5 * (prod(0, 0) + prod(1, 1)).real();
    }
    return 0.5 + diag / 6.0;
}

double depolarization_probability(double fid_tr, double gate_error,
                                  std::size_t gate_qubits) {
    LCAP_REQUIRE(gate_error >= 0.0 && gate_error <= 1.0, DomainError,
                 "gate error must lie in [0, 1]");
    const double fid_depolarized =
        1.0 / static_cast<double>(std::size_t{1} << gate_qubits);
    LCAP_REQUIRE(fid_tr > fid_depolarized && fid_tr <= 1.0 + 1e-15, DomainError,
                 "thermal fidelity outside (1/2^n, 1]");
    if (1.0 - fid_tr >= gate_error) {
        return 0.0;
    }
    return (fid_tr - (1.0 - gate_error)) / (fid_tr - fid_depolarized);
}

NoiseModel NoiseModel::calibration_snapshot() {
    NoiseModel m;
    const std::array<QubitCalibration, 7> q{{
        {9.6, 16.47, 35.56, 0.0007, 0.0220},
        {150.65, 55.92, 35.56, 0.0003, 0.0232},
        {120.61, 103.28, 35.56, 0.0002, 0.0205},
        {169.23, 151.85, 35.56, 0.0003, 0.0176},
        {159.29, 117.10, 35.56, 0.0005, 0.0178},
        {187.23, 140.95, 35.56, 0.0003, 0.0240},
        {163.37, 180.04, 35.56, 0.0002, 0.0060},
    }};
    for (std::size_t i = 0; i < q.size(); ++i) {
        m.qubits[i] = q[i];
    }
    m.couplings[{0, 1}] = {391.11, 0.0129};
    m.couplings[{1, 0}] = {426.67, 0.0129};
    m.couplings[{1, 2}] = {355.56, 0.0052};
    m.couplings[{1, 3}] = {405.33, 0.0145};
    m.couplings[{2, 1}] = {320.00, 0.0052};
    m.couplings[{3, 1}] = {369.78, 0.0145};
    m.couplings[{3, 5}] = {284.44, 0.0086};
    m.couplings[{4, 5}] = {590.22, 0.0103};
    m.couplings[{5, 3}] = {320.00, 0.0086};
    m.couplings[{5, 4}] = {625.78, 0.0103};
    m.couplings[{5, 6}] = {640.00, 0.0102};
    m.couplings[{6, 5}] = {604.44, 0.0102};

    // Qubits 7..11 copy qubits 2..6 together with their mutual couplings.
    constexpr std::size_t shift = 5;
    for (std::size_t i = 2; i <= 6; ++i) {
        m.qubits[i + shift] = m.qubits[i];
    }
    const auto original = m.couplings;
    for (const auto &[pair, cal] : original) {
        if (pair.first >= 2 && pair.second >= 2) {
            m.couplings[{pair.first + shift, pair.second + shift}] = cal;
        }
    }
    // Bridges between each boundary qubit and its copy reuse the boundary
    // qubit's outward coupling.
    m.couplings[{2, 7}] = original.at({2, 1});
    m.couplings[{7, 2}] = original.at({1, 2});
    m.couplings[{6, 11}] = original.at({6, 5});
    m.couplings[{11, 6}] = original.at({5, 6});
    return m;
}

NoiseModel NoiseModel::noiseless(std::size_t num_qubits) {
    NoiseModel m;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < num_qubits; ++i) {
        m.qubits[i] = {inf, inf, 0.0, 0.0, 0.0};
    }
    return m;
}

CouplingCalibration NoiseModel::coupling(std::size_t control,
                                         std::size_t target) const {
    if (auto it = couplings.find({control, target}); it != couplings.end()) {
        return it->second;
    }
    if (auto it = couplings.find({target, control}); it != couplings.end()) {
        return it->second;
    }
    if (couplings.empty()) {
        return {};
    }
    CouplingCalibration mean;
    for (const auto &[pair, cal] : couplings) {
        mean.gate_time_ns += cal.gate_time_ns;
        mean.gate_error += cal.gate_error;
    }
    mean.gate_time_ns /= static_cast<double>(couplings.size());
    mean.gate_error /= static_cast<double>(couplings.size());
    return mean;
}

void NoiseModel::validate() const {
    for (const auto &[idx, q] : qubits) {
        LCAP_REQUIRE(q.t1_us > 0 && q.t2_us > 0 && q.gate_time_ns >= 0, ConfigError,
                     "qubit " + std::to_string(idx) +
                         ": T1, T2 must be positive and gate time non-negative");
        LCAP_REQUIRE(q.gate_error >= 0 && q.gate_error <= 1 &&
                         q.readout_error >= 0 && q.readout_error <= 1,
                     ConfigError,
                     "qubit " + std::to_string(idx) + ": errors must lie in [0, 1]");
    }
    for (const auto &[pair, c] : couplings) {
        const std::string name =
            std::to_string(pair.first) + "->" + std::to_string(pair.second);
        LCAP_REQUIRE(pair.first != pair.second, ConfigError,
                     "coupling " + name + " joins a qubit to itself");
        LCAP_REQUIRE(qubits.count(pair.first) && qubits.count(pair.second),
                     ConfigError, "coupling " + name + " references unknown qubit");
        LCAP_REQUIRE(c.gate_error >= 0 && c.gate_error <= 1 && c.gate_time_ns >= 0,
                     ConfigError, "coupling " + name + ": invalid time or error");
    }
}

NoiseModel read_noise_model(std::istream &in) {
    NoiseModel m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            return ConfigError("noise model line " + std::to_string(line_no) +
                               ": " + why);
        };
        if (tag == "qubit") {
            std::size_t idx = 0;
            QubitCalibration q;
            if (!(ls >> idx >> q.t1_us >> q.t2_us >> q.gate_time_ns >>
                  q.gate_error >> q.readout_error)) {
                throw fail("expected 'qubit <idx> <T1_us> <T2_us> <t_ns> "
                           "<gate_err> <ro_err>'");
            }
            m.qubits[idx] = q;
        } else if (tag == "coupling") {
            std::size_t c = 0, t = 0;
            CouplingCalibration cal;
            if (!(ls >> c >> t >> cal.gate_time_ns >> cal.gate_error)) {
                throw fail("expected 'coupling <control> <target> <t_ns> "
                           "<gate_err>'");
            }
            m.couplings[{c, t}] = cal;
        } else if (tag == "phase_damping") {
            std::string form;
            ls >> form;
            if (form == "consistent") {
                m.phase_damping_form = PhaseDampingForm::ConsistentWithT2;
            } else if (form == "literal") {
                m.phase_damping_form = PhaseDampingForm::Literal;
            } else {
                throw fail("phase_damping must be 'consistent' or 'literal'");
            }
        } else {
            throw fail("unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) {
            throw fail("trailing token '" + extra + "'");
        }
    }
    m.validate();
    return m;
}

NoiseModel load_noise_model(const std::string &path) {
    std::ifstream in(path);
    LCAP_REQUIRE(in.good(), ConfigError, "cannot open noise model '" + path + "'");
    return read_noise_model(in);
}

void write_noise_model(std::ostream &out, const NoiseModel &model) {
    out << std::setprecision(17);
    out << "# qubit <index> <T1_us> <T2_us> <t_ns> <gate_err> <ro_err>\n";
    for (const auto &[idx, q] : model.qubits) {
        out << "qubit " << idx << ' ' << q.t1_us << ' ' << q.t2_us << ' '
            << q.gate_time_ns << ' ' << q.gate_error << ' ' << q.readout_error
            << '\n';
    }
    out << "# coupling <control> <target> <t_ns> <gate_err>\n";
    for (const auto &[pair, c] : model.couplings) {
        out << "coupling " << pair.first << ' ' << pair.second << ' '
            << c.gate_time_ns << ' ' << c.gate_error << '\n';
    }
    out << "phase_damping "
        << (model.phase_damping_form == PhaseDampingForm::Literal ? "literal"
                                                                  : "consistent")
        << '\n';
}

NoisySimulator::NoisySimulator(const Circuit &circuit, const NoiseModel &noise,
                               std::span<const std::size_t> mapping)
    : circuit_(&circuit) {
    const std::size_t n = circuit.num_qubits();
    LCAP_REQUIRE(n <= kMaxQubits, DomainError,
                 "density-matrix simulation is limited to 8 qubits");
    LCAP_REQUIRE(mapping.size() == n, ConfigError,
                 "qubit mapping must list one physical qubit per logical qubit");
    for (std::size_t i = 0; i < n; ++i) {
        LCAP_REQUIRE(noise.qubits.count(mapping[i]), ConfigError,
                     "physical qubit " + std::to_string(mapping[i]) +
                         " is not in the noise model");
        for (std::size_t j = 0; j < i; ++j) {
            LCAP_REQUIRE(mapping[i] != mapping[j], ConfigError,
                         "qubit mapping must be injective");
        }
    }

    auto relax_and_depolarize = [&](std::vector<Step> &steps, std::size_t logical,
                                    double time_ns, double gate_error) {
        const QubitCalibration &cal = noise.qubits.at(mapping[logical]);
        if (time_ns > 0.0 && (std::isfinite(cal.t1_us) || std::isfinite(cal.t2_us))) {
            steps.push_back({logical, thermal_relaxation(time_ns, cal.t1_us, cal.t2_us,
                                                         noise.phase_damping_form)});
        }
        const double fid = average_fidelity_tr(time_ns, cal.t1_us, cal.t2_us);
        const double p = depolarization_probability(fid, gate_error, 1);
        if (p > 0.0) {
            steps.push_back({logical, depolarizing(0.75 * p)});
        }
    };

    for (const auto &op : circuit.ops()) {
        std::vector<Step> steps;
        const auto qs = op.qubits();
        if (qs.size() == 1) {
            const QubitCalibration &cal = noise.qubits.at(mapping[qs[0]]);
            relax_and_depolarize(steps, qs[0], cal.gate_time_ns, cal.gate_error);
        } else {
            const CouplingCalibration cal =
                noise.coupling(mapping[qs[0]], mapping[qs[1]]);
            for (const auto q : qs) {
                relax_and_depolarize(steps, q, cal.gate_time_ns, cal.gate_error / 2);
            }
        }
        after_gate_.push_back(std::move(steps));
    }
    const double ro = noise.qubits.at(mapping[circuit.measured_qubit()]).readout_error;
    if (ro > 0.0) {
        readout_ = bit_flip(ro);
        has_readout_ = true;
    }
}

DensityMatrix NoisySimulator::evolve(std::span<const double> params,
                                     double x) const {
    DensityMatrix rho(circuit_->num_qubits());
    const auto ops = circuit_->ops();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const GateOp &op = ops[k];
        std::optional<double> angle;
        if (is_parametrized(op.kind)) {
            angle = resolve_angle(op, params, x);
        }
        rho.apply_unitary(op.qubits(), gate_matrix(op.kind, angle));
        for (const auto &step : after_gate_[k]) {
            step.channel.apply(rho, step.qubit);
        }
#ifndef NDEBUG
        if (rho.num_qubits() <= 4) {
            assert(std::abs(rho.trace() - 1.0) < 1e-9);
            assert(rho.hermiticity_error() < 1e-9);
        }
#endif
    }
    return rho;
}

double NoisySimulator::expectation(std::span<const double> params, double x) const {
    DensityMatrix rho = evolve(params, x);
    const std::size_t m = circuit_->measured_qubit();
    if (has_readout_) {
        readout_.apply(rho, m);
    }
    return std::clamp(rho.expectation_z(m), -1.0, 1.0);
}

double run_noisy(const Circuit &circuit, std::span<const double> params,
                 double x, const NoiseModel &noise,
                 std::span<const std::size_t> mapping) {
    return NoisySimulator(circuit, noise, mapping).expectation(params, x);
}

} // namespace lcap
