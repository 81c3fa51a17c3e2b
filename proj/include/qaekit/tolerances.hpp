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

#ifndef QAEKIT_TOLERANCES_HPP
#define QAEKIT_TOLERANCES_HPP

namespace qaekit {

// Every numeric tolerance used by the library and its tests lives here, so
// operation contracts and invariant checks cannot drift apart.
struct Tolerances {
    // Domain-type invariants.
    double hermiticity = 1e-10;       // max-norm asymmetry allowed in a density operator
    double unit_trace = 1e-10;        // |Tr(rho) - 1|
    double psd_min_eigenvalue = 1e-9; // eigenvalues above -psd_min_eigenvalue count as >= 0
    double unit_norm = 1e-10;         // pure-state normalization
    double orthonormality = 1e-8;     // pairwise eigenvector orthonormality
    double reassembly = 1e-8;         // spectral reassembly max-norm error
    double eigenvalue_sum = 1e-8;     // density-operator eigenvalue sum vs 1

    // Operation contracts.
    double eig_input_hermiticity = 1e-8; // eig_hermitian input symmetry gate
    double clamp_default = 1e-9;         // matrix_sqrt_psd default clamp
    double w_matrix_clamp = 1e-8;        // clamp for estimated W matrices
    double unitarity = 1e-9;             // ||U U^dag - I||_max for circuits
    double kernel_vs_dense = 1e-10;      // in-place kernels vs full embeddings
    double degenerate_success = 1e-12;   // compression success probability floor
    double ssfb_radicand_floor = 1e-10;  // negative radicand magnitude treated as roundoff
};

inline constexpr Tolerances tol{};

} // namespace qaekit

#endif
