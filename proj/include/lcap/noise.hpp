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
 * Density-matrix simulation under a calibration-driven noise model.
 *
 * After every gate each participating qubit goes through thermal relaxation
 * (amplitude damping followed by phase damping, qubit temperature 0 K) for
 * the gate's duration, then through a depolarizing channel that makes up the
 * remaining gate infidelity. Readout error is a bit flip on the measured
 * qubit before the final <Z>.
 *
 * Units: gate times in nanoseconds, T1/T2 in microseconds.
 */
#pragma once

#include "lcap/circuit.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lcap {

/// rho stored as a 2n-qubit register: entry (r, c) lives at r + c * 2^n, so
/// row bits are qubits 0..n-1 and column bits are qubits n..2n-1.
class DensityMatrix {
  public:
    /// |0...0><0...0|.
    explicit DensityMatrix(std::size_t num_qubits);
    static DensityMatrix from_state(const StateVector &psi);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_[r + c * dim_];
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r + c * dim_];
    }
    std::span<Complex> raw() { return entries_; }
    std::span<const Complex> raw() const { return entries_; }

    /// rho -> U rho U^dag on the given wires.
    void apply_unitary(std::span<const std::size_t> qubits, const GateMatrix &u);
    /// rho -> K rho K^dag (not trace preserving on its own).
    void apply_operator(std::span<const std::size_t> qubits, const GateMatrix &k);

    Complex trace() const;
    /// max |rho - rho^dag| entry.
    double hermiticity_error() const;
    double expectation_z(std::size_t qubit) const;

  private:
    std::size_t num_qubits_;
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Single-qubit Kraus channel.
struct KrausChannel {
    std::vector<GateMatrix> operators;

    /// max |sum K^dag K - I| entry.
    double completeness_error() const;
    void apply(DensityMatrix &rho, std::size_t qubit) const;
    /// K_a K_b for all pairs: `second` applied after `first`.
    static KrausChannel compose(const KrausChannel &second,
                                const KrausChannel &first);
};

KrausChannel amplitude_damping(double gamma);
KrausChannel phase_damping(double gamma);
/// (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
KrausChannel depolarizing(double p);
/// (1-p) rho + p X rho X.
KrausChannel bit_flip(double p);

enum class PhaseDampingForm {
    /// gamma_PD = 1 - exp(t/T1 - 2t/T2): total coherence decays as exp(-t/T2).
    ConsistentWithT2,
    /// gamma_PD = exp(-t/T1) - exp(-2t/T2).
    Literal,
};

double amplitude_damping_gamma(double t_ns, double t1_us);
double phase_damping_gamma(double t_ns, double t1_us, double t2_us,
                           PhaseDampingForm form = PhaseDampingForm::ConsistentWithT2);

/// Phase damping after amplitude damping.
KrausChannel thermal_relaxation(double t_ns, double t1_us, double t2_us,
                                PhaseDampingForm form = PhaseDampingForm::ConsistentWithT2);

/// 1/2 + exp(-t/T1)/6 + exp(-t/T2)/3.
double average_fidelity_tr(double t_ns, double t1_us, double t2_us);

/// Average fidelity of a single-qubit channel, from its Pauli transfer
/// diagonal: 1/2 + (R_xx + R_yy + R_zz) / 6.
double average_fidelity(const KrausChannel &channel);

/**
 * @brief Weight p of the completely depolarizing channel such that
 * (1-p) F_tr + p / 2^n = 1 - gate_error. Zero when thermal relaxation alone
 * already accounts for the gate error.
 *
 * The returned p mixes in I/2^n; the Pauli-form channel with the same
 * action is depolarizing(3p/4) for one qubit.
 */
double depolarization_probability(double fid_tr, double gate_error,
                                  std::size_t gate_qubits = 1);

struct QubitCalibration {
    double t1_us = 0.0;
    double t2_us = 0.0;
    double gate_time_ns = 0.0;
    double gate_error = 0.0;
    double readout_error = 0.0;
    bool operator==(const QubitCalibration &) const = default;
};

struct CouplingCalibration {
    double gate_time_ns = 0.0;
    double gate_error = 0.0;
    bool operator==(const CouplingCalibration &) const = default;
};

struct NoiseModel {
    std::map<std::size_t, QubitCalibration> qubits;
    /// Keyed by (control, target).
    std::map<std::pair<std::size_t, std::size_t>, CouplingCalibration> couplings;
    PhaseDampingForm phase_damping_form = PhaseDampingForm::ConsistentWithT2;

    /// Calibration snapshot of a 7-qubit device, extended to 12 qubits by
    /// copying qubits 2..6 onto 7..11 (see configs/calibration_12q.txt).
    static NoiseModel calibration_snapshot();
    /// T1 = T2 = inf and all errors zero on qubits 0..n-1.
    static NoiseModel noiseless(std::size_t num_qubits);

    /// (control, target) entry, else the reverse direction, else the mean
    /// over all couplings.
    CouplingCalibration coupling(std::size_t control, std::size_t target) const;
    void validate() const;
    bool operator==(const NoiseModel &) const = default;
};

/// Line-oriented text format:
///   qubit <index> <T1_us> <T2_us> <t_ns> <gate_err> <ro_err>
///   coupling <control> <target> <t_ns> <gate_err>
///   phase_damping consistent|literal
/// '#' starts a comment.
NoiseModel read_noise_model(std::istream &in);
NoiseModel load_noise_model(const std::string &path);
void write_noise_model(std::ostream &out, const NoiseModel &model);

/// Precomputes the per-gate channels for one circuit/model/mapping so
/// repeated evaluations only pay for the density-matrix updates.
class NoisySimulator {
  public:
    NoisySimulator(const Circuit &circuit, const NoiseModel &noise,
                   std::span<const std::size_t> mapping);

    double expectation(std::span<const double> params, double x) const;
    /// Final density matrix before readout (for tests).
    DensityMatrix evolve(std::span<const double> params, double x) const;

    static constexpr std::size_t kMaxQubits = 8;

  private:
    struct Step {
        std::size_t qubit;
        KrausChannel channel;
    };
    const Circuit *circuit_;
    std::vector<std::vector<Step>> after_gate_;
    KrausChannel readout_;
    bool has_readout_ = false;
};

/// tr(rho Z_measured) of the noisy evolution.
double run_noisy(const Circuit &circuit, std::span<const double> params,
                 double x, const NoiseModel &noise,
                 std::span<const std::size_t> mapping);

} // namespace lcap
