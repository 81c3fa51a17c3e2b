// Copyright 2026 The qaekit authors
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

#ifndef QAEKIT_QFI_HPP
#define QAEKIT_QFI_HPP

#include <cstdint>
#include <vector>

#include "qaekit/circuits.hpp"
#include "qaekit/fidelity.hpp"
#include "qaekit/pauli.hpp"

namespace qaekit {

// Quantum Fisher information estimation through the fidelity surrogate
//   I_tau = 8 (1 - F(rho_theta, rho_{theta+tau})) / tau^2,
// with the phase encoded by W(theta) = exp(-i theta G) and the probe state
// prepared by a trainable pure-state ansatz.

struct QfiConfig {
    int probe_qubits = 3;
    PauliHamiltonian generator; // G
    double theta = 0.1;         // working point
    double tau = 1e-2;          // surrogate step, > 0 and << 1
    int outer_iterations = 75;
    double outer_lr = 0.01;
    int ansatz_layers = 5;
    FidelityMethod fidelity_method = FidelityMethod::Exact;
    QaeConfig qae; // embedded estimator settings (Qae method only)
    std::uint64_t seed = 1;

    void validate() const;
};

struct QfiValue {
    double value = 0.0; // surrogate QFI, clamped to >= 0
    double band = 0.0;  // 8*sqrt(2*delta)/tau^2 for the Qae method, else 0
    double delta = 0.0; // embedded training loss, 0 for the exact method
    bool clamped = false; // fidelity estimate exceeded 1 and was clamped
};

struct QfiIterationRow {
    int iteration = 0;
    double surrogate = 0.0;  // estimated I_tau for the current probe
    double oracle_qfi = 0.0; // 4 Var(G) of the current (pure) probe
    double delta = 0.0;
    double band = 0.0;
};

struct QfiResult {
    RealVector final_params;
    std::vector<QfiIterationRow> trace;
    bool aborted = false; // embedded estimator failed twice in one iteration
};

/// W(theta) rho W(theta)^dag with W(theta) = exp(-i theta G).
DensityOperator encode_phase(const DensityOperator& rho,
                             const PauliHamiltonian& g, double theta);
PureState encode_phase(const PureState& psi, const PauliHamiltonian& g,
                       double theta);

/// Exact pure-state QFI 4(<G^2> - <G>^2).
double exact_qfi_pure(const PureState& probe, const PauliHamiltonian& g);

/// Fidelity surrogate 8(1-F)/tau^2 with the chosen fidelity backend.
/// Estimates above 1 are clamped before the formula (and flagged).
QfiValue qfi_surrogate(const DensityOperator& rho_theta,
                       const DensityOperator& rho_theta_tau, double tau,
                       FidelityMethod method,
                       const QaeConfig* qae_config = nullptr);

/// Gradient ascent on the surrogate over the probe parameters. The exact
/// method differentiates through the pure-state overlap with parameter
/// shifts; the Qae method falls back to central finite differences.
QfiResult optimize_probe(const QfiConfig& config);

} // namespace qaekit

#endif
