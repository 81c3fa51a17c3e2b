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

#ifndef QAEKIT_QAE_HPP
#define QAEKIT_QAE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qaekit/circuits.hpp"
#include "qaekit/linalg.hpp"

namespace qaekit {

// Quantum auto-encoder: train an encoder U(theta) so that the input state's
// support fits in the K latent qubits (the trailing K qubits of the register;
// the leading N-K "trash" qubits are driven to |0>).

struct QaeConfig {
    int num_qubits = 0;     // N
    int latent_qubits = 0;  // K, 1 <= K < N
    int layers = 5;         // encoder ansatz depth
    double learning_rate = 0.8;
    int iterations = 200;   // T; 0 means evaluate the initial loss only
    std::uint64_t seed = 1; // parameter initialization

    void validate() const;
};

// Trained encoder plus its loss history. loss_trace has T+1 entries: the
// initial loss followed by the loss after each update.
struct QaeModel {
    QaeConfig config;
    ParamCircuit circuit;
    double final_loss = 0.0;
    std::vector<double> loss_trace;
};

// K-qubit compressed state together with the weight the encoder kept inside
// the |0...0> trash sector; success_prob + training loss = 1.
struct CompressedState {
    int latent_qubits = 0;
    DensityOperator state;
    double success_prob = 0.0;
};

// Latent spectrum plus the N-qubit states U^dag |0...0>|w_i> reconstructed
// from it; the reconstructed states are orthonormal.
struct SpectralReadout {
    SpectralDecomposition latent;
    std::vector<PureState> reconstructed;
};

/// Trash-sector projector I - |0><0|^(N-K) (x) I_K: diagonal 0/1 matrix of
/// rank 2^N - 2^K.
ComplexMatrix projector_mg(int num_qubits, int latent_qubits);

/// Training loss: the weight of U rho U^dag outside the kept sector, in [0,1].
double qae_loss(const ParamCircuit& circ, const DensityOperator& rho,
                int latent_qubits);

/// Plain parameter-shift gradient descent on the loss for config.iterations
/// steps. Non-convergence is reported through final_loss, never an exception.
QaeModel train(const DensityOperator& rho, const QaeConfig& config);

/// As train(), but starting from the given parameters instead of the seeded
/// initialization (warm starts for protocols that retrain every iteration).
QaeModel train_from(const DensityOperator& rho, const QaeConfig& config,
                    const RealVector& initial_params);

/// Normalized kept-sector block of U rho U^dag on the K latent qubits.
CompressedState compress(const QaeModel& model, const DensityOperator& rho);

/// Latent eigenpairs and the reconstructed N-qubit frame.
SpectralReadout spectral_readout(const QaeModel& model,
                                 const CompressedState& compressed);

/// rho_hat = sum_i lambda_i |phi_i><phi_i| over the readout frame;
/// rank <= 2^K by construction.
DensityOperator reconstructed_state(const QaeModel& model,
                                    const SpectralReadout& readout);

/// Model persistence; exact round trip (hex floats).
void save_model(const QaeModel& model, std::ostream& out);
QaeModel load_model(std::istream& in);
void save_model_file(const QaeModel& model, const std::string& path);
QaeModel load_model_file(const std::string& path);

} // namespace qaekit

#endif
