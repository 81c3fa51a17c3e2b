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

#ifndef QAEKIT_FIDELITY_HPP
#define QAEKIT_FIDELITY_HPP

#include <cstdint>
#include <string>

#include "qaekit/linalg.hpp"
#include "qaekit/qae.hpp"

namespace qaekit {

enum class FidelityMethod { Qae, QaeResourceEfficient, Ssfb, Exact };

// Fidelity estimate with the +-sqrt(2*delta) certainty band attached, where
// delta is the auto-encoder training loss behind the estimate.
struct FidelityEstimate {
    double value = 0.0; // in [0, 1]
    double delta = 0.0;
    double lower = 0.0; // value - band
    double upper = 0.0; // value + band
    FidelityMethod method = FidelityMethod::Exact;

    static FidelityEstimate exact(double fidelity);
};

// Mixture of a pure state with a truncated geometric diagonal background:
//   rho = p |psi><psi| + (1-p) V(r),   V_ii proportional to 1.5^(-a*i)
// for 1-based i <= r, normalized to unit trace.
struct NoisyStateSpec {
    PureState base;
    double p = 0.0;        // mixing probability in [0, 1]
    int r = 1;             // diagonal support size, 1 <= r <= 2^N
    double a = 0.0;        // decay exponent
    std::uint64_t seed = 0; // records how `base` was drawn

    NoisyStateSpec(PureState base_state, double p_, int r_, double a_,
                   std::uint64_t seed_ = 0)
        : base(std::move(base_state)), p(p_), r(r_), a(a_), seed(seed_) {}
};

/// Superposition of the N single-excitation basis states with random
/// complex amplitudes (the second reference state of the experiments).
PureState random_one_excitation_state(int num_qubits, std::uint64_t seed);

DensityOperator build_noisy_state(const NoisyStateSpec& spec);

/// W matrix over a spectral frame: W_ij = sqrt(l_i l_j) <phi_i|kappa|phi_j>.
/// Hermitian PSD with Tr(W) <= 1 whenever the frame is orthonormal and the
/// weights sum to one.
ComplexMatrix build_w_matrix(const std::vector<PureState>& frame,
                             const RealVector& weights,
                             const DensityOperator& kappa);

/// Train a QAE on rho, project kappa into the learned eigenframe and return
/// Tr(sqrt(W_hat)) with the +-sqrt(2*delta) band.
FidelityEstimate estimate_fidelity_qae(const DensityOperator& rho,
                                       const DensityOperator& kappa,
                                       const QaeConfig& config);

/// Variant that trains a QAE on both states and assembles the W matrix from
/// pure-state inner products only; band sqrt(2*max(delta_rho, delta_kappa)).
FidelityEstimate estimate_fidelity_resource_efficient(
    const DensityOperator& rho, const DensityOperator& kappa,
    const QaeConfig& config_rho, const QaeConfig& config_kappa);

/// Sub-fidelity Tr(rho kappa) + sqrt(2((Tr rho kappa)^2 - Tr(rho kappa)^2)).
double sub_fidelity(const DensityOperator& rho, const DensityOperator& kappa);

/// Super-fidelity Tr(rho kappa) + sqrt((1 - Tr rho^2)(1 - Tr kappa^2)).
double super_fidelity(const DensityOperator& rho,
                      const DensityOperator& kappa);

const char* to_string(FidelityMethod method);

} // namespace qaekit

#endif
