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

#include "qaekit/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qaekit {

namespace {

void require_same_dim(const DensityOperator& a, const DensityOperator& b,
                      const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch, " << a.dim() << " vs " << b.dim();
        raise(ErrorCode::DimensionMismatch, msg.str());
    }
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

double sqrt_clamped_radicand(double radicand, const char* what) {
    if (radicand < -tol.ssfb_radicand_floor) {
        std::ostringstream msg;
        msg << what << ": radicand " << radicand
            << " is negative beyond roundoff";
        raise(ErrorCode::NegativeSpectrum, msg.str());
    }
    // Magnitudes inside the roundoff floor are exact zeros that picked up
    // noise; the square root would amplify them by seven orders.
    if (std::abs(radicand) < tol.ssfb_radicand_floor) return 0.0;
    return std::sqrt(radicand);
}

FidelityEstimate banded_estimate(double value, double delta,
                                 FidelityMethod method) {
    FidelityEstimate est;
    est.value = clamp01(value);
    est.delta = delta;
    const double band = std::sqrt(2.0 * delta);
    est.lower = est.value - band;
    est.upper = est.value + band;
    est.method = method;
    return est;
}

} // namespace

FidelityEstimate FidelityEstimate::exact(double fidelity) {
    FidelityEstimate est;
    est.value = fidelity;
    est.delta = 0.0;
    est.lower = fidelity;
    est.upper = fidelity;
    est.method = FidelityMethod::Exact;
    return est;
}

const char* to_string(FidelityMethod method) {
    switch (method) {
        case FidelityMethod::Qae: return "qae";
        case FidelityMethod::QaeResourceEfficient: return "qae-resource-efficient";
        case FidelityMethod::Ssfb: return "ssfb";
        case FidelityMethod::Exact: return "exact";
    }
    return "?";
}

PureState random_one_excitation_state(int num_qubits, std::uint64_t seed) {
    Rng rng(seed);
    const std::int64_t dim = dim_for_qubits(num_qubits);
    ComplexVector v = ComplexVector::Zero(dim);
    for (int q = 0; q < num_qubits; ++q) {
        v(std::int64_t{1} << (num_qubits - 1 - q)) = rng.complex_gaussian();
    }
    v.normalize();
    return PureState(num_qubits, std::move(v));
}

DensityOperator build_noisy_state(const NoisyStateSpec& spec) {
    const int n = spec.base.num_qubits();
    const std::int64_t dim = dim_for_qubits(n);
    if (spec.r < 1 || spec.r > dim) {
        std::ostringstream msg;
        msg << "build_noisy_state: r = " << spec.r << " out of range [1, " << dim
            << "]";
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    if (spec.p < 0.0 || spec.p > 1.0) {
        raise(ErrorCode::InvalidArgument,
              "build_noisy_state: p must lie in [0, 1]");
    }
    // Diagonal background: V_ii proportional to 1.5^(-a*i), 1-based i <= r,
    // normalized to unit trace.
    RealVector diag = RealVector::Zero(dim);
    double norm = 0.0;
    for (int i = 1; i <= spec.r; ++i) {
        const double w = std::pow(1.5, -spec.a * i);
        diag(i - 1) = w;
        norm += w;
    }
    diag /= norm;
    ComplexMatrix m =
        spec.p * (spec.base.amplitudes() * spec.base.amplitudes().adjoint());
    for (std::int64_t i = 0; i < dim; ++i) {
        m(i, i) += (1.0 - spec.p) * diag(i);
    }
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(n, std::move(m));
}

ComplexMatrix build_w_matrix(const std::vector<PureState>& frame,
                             const RealVector& weights,
                             const DensityOperator& kappa) {
    const std::int64_t r = static_cast<std::int64_t>(frame.size());
    if (weights.size() != r) {
        raise(ErrorCode::InvalidArgument,
              "build_w_matrix: frame and weights sizes differ");
    }
    std::vector<ComplexVector> kappa_frame(r);
    for (std::int64_t j = 0; j < r; ++j) {
        if (frame[j].num_qubits() != kappa.num_qubits()) {
            raise(ErrorCode::DimensionMismatch,
                  "build_w_matrix: frame and kappa dimensions differ");
        }
        kappa_frame[j] = kappa.matrix() * frame[j].amplitudes();
    }
    ComplexMatrix w(r, r);
    for (std::int64_t i = 0; i < r; ++i) {
        for (std::int64_t j = 0; j < r; ++j) {
            const double scale = std::sqrt(std::max(weights(i), 0.0) *
                                           std::max(weights(j), 0.0));
            w(i, j) = scale * frame[i].amplitudes().dot(kappa_frame[j]);
        }
    }
    w = ((w + w.adjoint()) / 2.0).eval();
    return w;
}

FidelityEstimate estimate_fidelity_qae(const DensityOperator& rho,
                                       const DensityOperator& kappa,
                                       const QaeConfig& config) {
    require_same_dim(rho, kappa, "estimate_fidelity_qae");
    QaeModel model = train(rho, config);
    CompressedState compressed = compress(model, rho);
    SpectralReadout readout = spectral_readout(model, compressed);
    ComplexMatrix w = build_w_matrix(readout.reconstructed,
                                     readout.latent.eigenvalues(), kappa);
    const double value =
        matrix_sqrt_psd(w, tol.w_matrix_clamp).trace().real();
    return banded_estimate(value, model.final_loss, FidelityMethod::Qae);
}

FidelityEstimate estimate_fidelity_resource_efficient(
    const DensityOperator& rho, const DensityOperator& kappa,
    const QaeConfig& config_rho, const QaeConfig& config_kappa) {
    require_same_dim(rho, kappa, "estimate_fidelity_resource_efficient");
    QaeModel model_rho = train(rho, config_rho);
    CompressedState comp_rho = compress(model_rho, rho);
    SpectralReadout readout_rho = spectral_readout(model_rho, comp_rho);

    QaeModel model_kappa = train(kappa, config_kappa);
    CompressedState comp_kappa = compress(model_kappa, kappa);
    SpectralReadout readout_kappa = spectral_readout(model_kappa, comp_kappa);

    // W from pure-state inner products only:
    //   W_ij = sum_k mu_k sqrt(l_i l_j) <phi_i|Phi_k><Phi_k|phi_j>.
    const std::int64_t r_rho =
        static_cast<std::int64_t>(readout_rho.reconstructed.size());
    const std::int64_t r_kappa =
        static_cast<std::int64_t>(readout_kappa.reconstructed.size());
    ComplexMatrix overlaps(r_rho, r_kappa);
    for (std::int64_t i = 0; i < r_rho; ++i) {
        for (std::int64_t k = 0; k < r_kappa; ++k) {
            overlaps(i, k) = readout_rho.reconstructed[i].amplitudes().dot(
                readout_kappa.reconstructed[k].amplitudes());
        }
    }
    RealVector mu = readout_kappa.latent.eigenvalues().cwiseMax(0.0);
    RealVector root_lambda =
        readout_rho.latent.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix w = root_lambda.asDiagonal() *
                      (overlaps * mu.asDiagonal() * overlaps.adjoint()) *
                      root_lambda.asDiagonal();
    w = ((w + w.adjoint()) / 2.0).eval();
    const double value =
        matrix_sqrt_psd(w, tol.w_matrix_clamp).trace().real();
    const double delta = std::max(model_rho.final_loss, model_kappa.final_loss);
    return banded_estimate(value, delta,
                           FidelityMethod::QaeResourceEfficient);
}

double sub_fidelity(const DensityOperator& rho, const DensityOperator& kappa) {
    require_same_dim(rho, kappa, "sub_fidelity");
    const ComplexMatrix product = rho.matrix() * kappa.matrix();
    const double overlap = product.trace().real();
    const double quartic = (product * product).trace().real();
    const double radicand = 2.0 * (overlap * overlap - quartic);
    return overlap + sqrt_clamped_radicand(radicand, "sub_fidelity");
}

double super_fidelity(const DensityOperator& rho,
                      const DensityOperator& kappa) {
    require_same_dim(rho, kappa, "super_fidelity");
    const double overlap = (rho.matrix() * kappa.matrix()).trace().real();
    const double radicand = (1.0 - rho.purity()) * (1.0 - kappa.purity());
    return overlap + sqrt_clamped_radicand(radicand, "super_fidelity");
}

} // namespace qaekit
