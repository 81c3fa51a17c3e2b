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

#ifndef QAEKIT_GIBBS_HPP
#define QAEKIT_GIBBS_HPP

#include <cstdint>
#include <vector>

#include "qaekit/circuits.hpp"
#include "qaekit/pauli.hpp"
#include "qaekit/qae.hpp"

namespace qaekit {

// Variational Gibbs-state preparation: minimize the truncated free energy
//   F_R(rho) = Tr(H rho) - S_R(rho) / beta,
//   S_R(rho) = sum_{j=0}^R C_j Tr(rho^{j+1}),
// over states rho(gamma) prepared by an ansatz on system+ancilla qubits,
// with the trace powers supplied either by an auto-encoder readout of
// rho(gamma) or by exact eigenvalues (ablation mode).

enum class EigenSource { Qae, ExactOracle };

struct GibbsConfig {
    PauliHamiltonian hamiltonian;
    double beta = 1.0;       // inverse temperature, > 0
    int truncation = 2;      // R >= 1
    int outer_iterations = 200;
    double outer_lr = 0.2;
    int ansatz_layers = 5;   // preparation circuit U(gamma)
    int ancilla_qubits = 1;
    QaeConfig qae;           // inner-loop encoder settings
    EigenSource eigen_source = EigenSource::Qae;
    bool warm_start = true;  // seed each inner training with the previous one
    bool use_main_text_entropy = false; // alternative R=2 objective, see below
    std::uint64_t seed = 1;

    void validate() const;
};

struct GibbsIterationRow {
    int iteration = 0;
    double free_energy = 0.0;       // F_R from the configured eigen source
    double free_energy_exact = 0.0; // F_R from exact eigenvalues
    double fidelity = 0.0;          // Uhlmann fidelity to the exact Gibbs state
    double delta = 0.0;             // inner training loss (0 in oracle mode)
    bool oracle_fallback = false;   // inner compression degenerated this step
};

struct GibbsResult {
    RealVector final_params;
    std::vector<GibbsIterationRow> trace;
    double final_fidelity = 0.0;
    double epsilon1_surrogate = 0.0; // final F_R minus the best F_R seen
    double fidelity_bound = 0.0;
    double fidelity_bound_compact = 0.0;
    int discrepancy_violations = 0;
};

/// exp(-beta H) / Tr(exp(-beta H)).
DensityOperator exact_gibbs(const PauliHamiltonian& h, double beta);

/// Coefficients C_0..C_R of the truncated-entropy trace polynomial:
/// C_0 = sum_{k=1}^R 1/k, C_j = (-1)^j sum_{k=j}^R (k choose j)/k.
RealVector truncation_coefficients(int truncation);

/// S_R(rho) = sum_j C_j Tr(rho^{j+1}); exactly 0 on pure states.
double truncated_entropy(const DensityOperator& rho, int truncation);

/// Tr(H rho) - S_R / beta with caller-supplied trace powers
/// (trace_powers[j] = Tr(rho^{j+1}), length R+1).
double truncated_free_energy(const DensityOperator& rho,
                             const PauliHamiltonian& h, double beta,
                             int truncation, const RealVector& trace_powers);

/// Tr_A of U(gamma)|0><0|U(gamma)^dag: a system-qubit state of rank at most
/// 2^ancilla_qubits. The ancillas are the leading qubits of the register.
DensityOperator prepare_variational_state(const ParamCircuit& circ,
                                          int system_qubits,
                                          int ancilla_qubits);

/// Largest Delta in (0, 1/e) with -Delta ln Delta < (1-Delta)^{R+1}/(R+1),
/// found by bisection (the admissibility condition of the truncation bound).
double truncation_delta(int truncation);

/// Fidelity lower bound from the achieved errors:
/// 1 - sqrt(2 beta r (1-Delta)^{R+1} / (R+1) + 2 beta eps1
///          + 4 Cmax delta / (1 - 2 delta)).
/// May be negative (vacuous); returned as-is.
double fidelity_lower_bound(double epsilon1, double delta, double beta,
                            int rank, int truncation, double Delta,
                            double c_max);

/// Same bound in the compact form 1 - sqrt(2 beta eps + Cmax delta/(1-delta))
/// with eps = eps1 + 2 r (1-Delta)^{R+1} / (R+1); reported alongside.
double fidelity_lower_bound_compact(double epsilon1, double delta, double beta,
                                    int rank, int truncation, double Delta,
                                    double c_max);

/// Outer gradient-descent loop; returns the full per-iteration trace
/// including the exact fidelity to the target Gibbs state.
GibbsResult solve_gibbs(const GibbsConfig& config);

} // namespace qaekit

#endif
