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

#ifndef QAEKIT_LINALG_HPP
#define QAEKIT_LINALG_HPP

#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "qaekit/error.hpp"
#include "qaekit/tolerances.hpp"

namespace qaekit {

using cxd = std::complex<double>;

// Dense row-major complex matrix. Operators on N qubits are 2^N x 2^N, and
// qubit 0 is the most significant bit of the basis index: |b0 b1 ... b_{N-1}>
// maps to index b0*2^{N-1} + ... + b_{N-1}. Every indexing routine in the
// library assumes this convention.
using ComplexMatrix =
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline std::int64_t dim_for_qubits(int num_qubits) {
    return std::int64_t{1} << num_qubits;
}

/// Largest absolute asymmetry ||A - A^dag||_max.
double hermiticity_defect(const ComplexMatrix& a);

// An N-qubit pure state: unit-norm vector of 2^N amplitudes.
class PureState {
  public:
    PureState(int num_qubits, ComplexVector amplitudes);

    int num_qubits() const { return num_qubits_; }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// |0...0> on `num_qubits` qubits.
    static PureState zero(int num_qubits);
    /// Computational basis state |index>.
    static PureState basis(int num_qubits, std::int64_t index);

  private:
    int num_qubits_;
    ComplexVector amplitudes_;
};

// An N-qubit density operator: Hermitian, PSD, unit-trace 2^N x 2^N matrix.
// Construction validates all three invariants against the shared tolerances.
class DensityOperator {
  public:
    DensityOperator(int num_qubits, ComplexMatrix matrix);

    int num_qubits() const { return num_qubits_; }
    std::int64_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator maximally_mixed(int num_qubits);

    double purity() const;

  private:
    int num_qubits_;
    ComplexMatrix matrix_;
};

// Eigenvalues (descending) and matching orthonormal eigenvectors of a
// Hermitian operator. Eigenvectors are the columns of `eigenvectors()`.
class SpectralDecomposition {
  public:
    SpectralDecomposition(RealVector eigenvalues, ComplexMatrix eigenvectors);

    const RealVector& eigenvalues() const { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
    std::int64_t dim() const { return eigenvalues_.size(); }

    ComplexVector eigenvector(std::int64_t i) const {
        return eigenvectors_.col(i);
    }
    /// Eigenvector i as a PureState; the dimension must be a power of two.
    PureState eigenstate(std::int64_t i) const;

    /// Sum_i lambda_i v_i v_i^dag.
    ComplexMatrix reassemble() const;

  private:
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

/// Hermitian eigendecomposition with eigenvalues sorted descending.
/// Rejects inputs whose asymmetry exceeds the gate tolerance.
SpectralDecomposition eig_hermitian(const ComplexMatrix& a);

/// V diag(sqrt(max(lambda_i, 0))) V^dag for Hermitian A with spectrum above
/// -clamp_tol. Eigenvalues in [-clamp_tol, 0] are treated as roundoff zeros;
/// anything lower signals a malformed operator and raises NegativeSpectrum.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a,
                              double clamp_tol = tol.clamp_default);

/// Reduced state on the (ascending-ordered) kept qubits.
DensityOperator partial_trace(const DensityOperator& a,
                              const std::set<int>& keep);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) kappa sqrt(rho)).
double uhlmann_fidelity(const DensityOperator& rho,
                        const DensityOperator& kappa);

/// Trace distance Tr|a - b| = sum of absolute eigenvalues of (a - b).
double trace_distance(const DensityOperator& a, const DensityOperator& b);

} // namespace qaekit

#endif
