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

#include "qaekit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qaekit {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int qubits_for_dim(std::int64_t dim, const char* what) {
    if (!is_power_of_two(dim)) {
        std::ostringstream msg;
        msg << what << ": dimension " << dim << " is not a power of two";
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    int n = 0;
    while ((std::int64_t{1} << n) < dim) ++n;
    return n;
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream msg;
        msg << what << ": expected a nonempty square matrix, got " << a.rows()
            << "x" << a.cols();
        raise(ErrorCode::InvalidArgument, msg.str());
    }
}

void require_same_dim(const DensityOperator& a, const DensityOperator& b,
                      const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch, " << a.dim() << " vs " << b.dim();
        raise(ErrorCode::DimensionMismatch, msg.str());
    }
}

} // namespace

double hermiticity_defect(const ComplexMatrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

PureState::PureState(int num_qubits, ComplexVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits_ < 0) {
        raise(ErrorCode::InvalidArgument, "PureState: negative qubit count");
    }
    if (amplitudes_.size() != dim_for_qubits(num_qubits_)) {
        std::ostringstream msg;
        msg << "PureState: " << num_qubits_ << " qubits need "
            << dim_for_qubits(num_qubits_) << " amplitudes, got "
            << amplitudes_.size();
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    const double defect = std::abs(amplitudes_.norm() - 1.0);
    if (defect > tol.unit_norm) {
        std::ostringstream msg;
        msg << "PureState: norm deviates from 1 by " << defect;
        raise(ErrorCode::InvalidArgument, msg.str());
    }
}

PureState PureState::zero(int num_qubits) { return basis(num_qubits, 0); }

PureState PureState::basis(int num_qubits, std::int64_t index) {
    const std::int64_t dim = dim_for_qubits(num_qubits);
    if (index < 0 || index >= dim) {
        raise(ErrorCode::InvalidArgument, "PureState::basis: index out of range");
    }
    ComplexVector amps = ComplexVector::Zero(dim);
    amps(index) = 1.0;
    return PureState(num_qubits, std::move(amps));
}

DensityOperator::DensityOperator(int num_qubits, ComplexMatrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
    require_square(matrix_, "DensityOperator");
    if (num_qubits_ < 0 || matrix_.rows() != dim_for_qubits(num_qubits_)) {
        std::ostringstream msg;
        msg << "DensityOperator: " << num_qubits_ << " qubits need dimension "
            << dim_for_qubits(num_qubits_) << ", got " << matrix_.rows();
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    const double asym = hermiticity_defect(matrix_);
    if (asym > tol.hermiticity) {
        std::ostringstream msg;
        msg << "DensityOperator: not Hermitian, max asymmetry " << asym;
        raise(ErrorCode::NotHermitian, msg.str());
    }
    const double trace_defect = std::abs(matrix_.trace().real() - 1.0) +
                                std::abs(matrix_.trace().imag());
    if (trace_defect > tol.unit_trace) {
        std::ostringstream msg;
        msg << "DensityOperator: trace deviates from 1 by " << trace_defect;
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        matrix_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        raise(ErrorCode::NonConvergence,
              "DensityOperator: eigenvalue check did not converge");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol.psd_min_eigenvalue) {
        std::ostringstream msg;
        msg << "DensityOperator: not PSD, min eigenvalue " << min_eig;
        raise(ErrorCode::NegativeSpectrum, msg.str());
    }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    ComplexMatrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityOperator(psi.num_qubits(), std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(int num_qubits) {
    const std::int64_t dim = dim_for_qubits(num_qubits);
    ComplexMatrix m =
        ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityOperator(num_qubits, std::move(m));
}

double DensityOperator::purity() const {
    return (matrix_ * matrix_).trace().real();
}

SpectralDecomposition::SpectralDecomposition(RealVector eigenvalues,
                                             ComplexMatrix eigenvectors)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
    if (eigenvectors_.rows() != eigenvectors_.cols() ||
        eigenvalues_.size() != eigenvectors_.rows()) {
        raise(ErrorCode::InvalidArgument,
              "SpectralDecomposition: inconsistent shapes");
    }
}

PureState SpectralDecomposition::eigenstate(std::int64_t i) const {
    const int n = qubits_for_dim(dim(), "SpectralDecomposition::eigenstate");
    ComplexVector v = eigenvectors_.col(i);
    v.normalize();
    return PureState(n, std::move(v));
}

ComplexMatrix SpectralDecomposition::reassemble() const {
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (std::int64_t i = 0; i < dim(); ++i) {
        out += eigenvalues_(i) * (eigenvectors_.col(i) *
                                  eigenvectors_.col(i).adjoint());
    }
    return out;
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& a) {
    require_square(a, "eig_hermitian");
    const double asym = hermiticity_defect(a);
    if (asym > tol.eig_input_hermiticity) {
        std::ostringstream msg;
        msg << "eig_hermitian: input not Hermitian, max asymmetry " << asym;
        raise(ErrorCode::NotHermitian, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    if (solver.info() != Eigen::Success) {
        raise(ErrorCode::NonConvergence,
              "eig_hermitian: iteration limit reached before convergence");
    }
    // Eigen sorts ascending; flip to descending.
    const std::int64_t d = a.rows();
    RealVector values(d);
    ComplexMatrix vectors(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        values(i) = solver.eigenvalues()(d - 1 - i);
        vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    }
    return SpectralDecomposition(std::move(values), std::move(vectors));
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a, double clamp_tol) {
    SpectralDecomposition eig = eig_hermitian(a);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (min_eig < -clamp_tol) {
        std::ostringstream msg;
        msg << "matrix_sqrt_psd: negative spectrum, min eigenvalue " << min_eig
            << " below -" << clamp_tol;
        raise(ErrorCode::NegativeSpectrum, msg.str());
    }
    const std::int64_t d = a.rows();
    RealVector roots(d);
    for (std::int64_t i = 0; i < d; ++i) {
        roots(i) = std::sqrt(std::max(eig.eigenvalues()(i), 0.0));
    }
    ComplexMatrix out = eig.eigenvectors() * roots.asDiagonal() *
                        eig.eigenvectors().adjoint();
    // Symmetrize away the last bits of roundoff.
    out = ((out + out.adjoint()) / 2.0).eval();
    return out;
}

DensityOperator partial_trace(const DensityOperator& a,
                              const std::set<int>& keep) {
    const int n = a.num_qubits();
    if (keep.empty()) {
        raise(ErrorCode::InvalidArgument, "partial_trace: empty keep set");
    }
    for (int q : keep) {
        if (q < 0 || q >= n) {
            std::ostringstream msg;
            msg << "partial_trace: qubit index " << q << " out of range [0, "
                << n << ")";
            raise(ErrorCode::InvalidArgument, msg.str());
        }
    }
    const int k = static_cast<int>(keep.size());
    std::vector<int> keep_list(keep.begin(), keep.end());
    std::vector<int> env_list;
    for (int q = 0; q < n; ++q) {
        if (!keep.count(q)) env_list.push_back(q);
    }
    // Bit position of qubit q inside an N-qubit index (qubit 0 = MSB).
    auto bit_pos = [n](int q) { return n - 1 - q; };

    const std::int64_t dim_keep = std::int64_t{1} << k;
    const std::int64_t dim_env = std::int64_t{1} << (n - k);
    auto compose = [&](std::int64_t keep_bits, std::int64_t env_bits) {
        std::int64_t idx = 0;
        for (int i = 0; i < k; ++i) {
            idx |= ((keep_bits >> (k - 1 - i)) & 1) << bit_pos(keep_list[i]);
        }
        for (int i = 0; i < n - k; ++i) {
            idx |= ((env_bits >> (n - k - 1 - i)) & 1) << bit_pos(env_list[i]);
        }
        return idx;
    };

    ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
    const ComplexMatrix& m = a.matrix();
    for (std::int64_t r = 0; r < dim_keep; ++r) {
        for (std::int64_t c = 0; c < dim_keep; ++c) {
            cxd sum = 0.0;
            for (std::int64_t e = 0; e < dim_env; ++e) {
                sum += m(compose(r, e), compose(c, e));
            }
            out(r, c) = sum;
        }
    }
    return DensityOperator(k, std::move(out));
}

double uhlmann_fidelity(const DensityOperator& rho,
                        const DensityOperator& kappa) {
    require_same_dim(rho, kappa, "uhlmann_fidelity");
    // For a pure argument the fidelity reduces to sqrt(Tr(rho kappa)); the
    // direct formula avoids the eigensolver noise of the general path.
    const double overlap = (rho.matrix() * kappa.matrix()).trace().real();
    if (rho.purity() > 1.0 - 1e-12 || kappa.purity() > 1.0 - 1e-12) {
        return std::sqrt(std::max(overlap, 0.0));
    }
    ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
    ComplexMatrix inner = root * kappa.matrix() * root;
    inner = ((inner + inner.adjoint()) / 2.0).eval();
    return matrix_sqrt_psd(inner).trace().real();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    require_same_dim(a, b, "trace_distance");
    SpectralDecomposition eig = eig_hermitian(a.matrix() - b.matrix());
    return eig.eigenvalues().cwiseAbs().sum();
}

} // namespace qaekit
