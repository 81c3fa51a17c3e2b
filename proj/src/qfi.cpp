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

#include "qaekit/qfi.hpp"

#include <cmath>

namespace qaekit {

namespace {

ComplexMatrix phase_unitary(const PauliHamiltonian& g, double theta) {
    SpectralDecomposition eig = eig_hermitian(g.matrix());
    const std::int64_t dim = eig.dim();
    ComplexVector phases(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        phases(i) = std::exp(cxd(0.0, -theta * eig.eigenvalues()(i)));
    }
    return eig.eigenvectors() * phases.asDiagonal() *
           eig.eigenvectors().adjoint();
}

double surrogate_from_fidelity(double fidelity, double tau, bool* clamped) {
    if (fidelity > 1.0) {
        fidelity = 1.0;
        if (clamped) *clamped = true;
    }
    return 8.0 * (1.0 - fidelity) / (tau * tau);
}

} // namespace

void QfiConfig::validate() const {
    if (probe_qubits < 1) {
        raise(ErrorCode::InvalidArgument, "QfiConfig: probe_qubits must be >= 1");
    }
    if (generator.num_qubits() != probe_qubits) {
        raise(ErrorCode::InvalidArgument,
              "QfiConfig: generator must act on the probe qubits");
    }
    if (tau <= 0.0) {
        raise(ErrorCode::InvalidArgument, "QfiConfig: tau must be positive");
    }
    if (outer_iterations < 0) {
        raise(ErrorCode::InvalidArgument,
              "QfiConfig: outer_iterations must be >= 0");
    }
    if (outer_lr <= 0.0) {
        raise(ErrorCode::InvalidArgument, "QfiConfig: outer_lr must be positive");
    }
    if (ansatz_layers < 1) {
        raise(ErrorCode::InvalidArgument, "QfiConfig: ansatz_layers must be >= 1");
    }
    if (fidelity_method == FidelityMethod::Qae) {
        qae.validate();
        if (qae.num_qubits != probe_qubits) {
            raise(ErrorCode::InvalidArgument,
                  "QfiConfig: qae.num_qubits must equal probe_qubits");
        }
    } else if (fidelity_method != FidelityMethod::Exact) {
        raise(ErrorCode::InvalidArgument,
              "QfiConfig: fidelity_method must be exact or qae");
    }
}

DensityOperator encode_phase(const DensityOperator& rho,
                             const PauliHamiltonian& g, double theta) {
    if (g.num_qubits() != rho.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "encode_phase: generator and state sizes differ");
    }
    const ComplexMatrix w = phase_unitary(g, theta);
    ComplexMatrix m = w * rho.matrix() * w.adjoint();
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(rho.num_qubits(), std::move(m));
}

PureState encode_phase(const PureState& psi, const PauliHamiltonian& g,
                       double theta) {
    if (g.num_qubits() != psi.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "encode_phase: generator and state sizes differ");
    }
    ComplexVector v = phase_unitary(g, theta) * psi.amplitudes();
    v.normalize();
    return PureState(psi.num_qubits(), std::move(v));
}

double exact_qfi_pure(const PureState& probe, const PauliHamiltonian& g) {
    if (g.num_qubits() != probe.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "exact_qfi_pure: generator and probe sizes differ");
    }
    const ComplexMatrix gm = g.matrix();
    const ComplexVector gv = gm * probe.amplitudes();
    const double mean = probe.amplitudes().dot(gv).real();
    const double second = gv.squaredNorm(); // <G^2> since G is Hermitian
    return 4.0 * (second - mean * mean);
}

QfiValue qfi_surrogate(const DensityOperator& rho_theta,
                       const DensityOperator& rho_theta_tau, double tau,
                       FidelityMethod method, const QaeConfig* qae_config) {
    if (tau <= 0.0) {
        raise(ErrorCode::InvalidArgument, "qfi_surrogate: tau must be positive");
    }
    QfiValue out;
    switch (method) {
        case FidelityMethod::Exact: {
            const double f = uhlmann_fidelity(rho_theta, rho_theta_tau);
            out.value = surrogate_from_fidelity(f, tau, &out.clamped);
            break;
        }
        case FidelityMethod::Qae: {
            if (!qae_config) {
                raise(ErrorCode::InvalidArgument,
                      "qfi_surrogate: the qae method needs a QaeConfig");
            }
            const FidelityEstimate est =
                estimate_fidelity_qae(rho_theta, rho_theta_tau, *qae_config);
            out.delta = est.delta;
            out.band = 8.0 * std::sqrt(2.0 * est.delta) / (tau * tau);
            out.value = surrogate_from_fidelity(est.value, tau, &out.clamped);
            break;
        }
        default:
            raise(ErrorCode::InvalidArgument,
                  "qfi_surrogate: unsupported fidelity method");
    }
    return out;
}

QfiResult optimize_probe(const QfiConfig& config) {
    config.validate();
    const int n = config.probe_qubits;
    Rng rng(config.seed);
    ParamCircuit probe_circ =
        build_hardware_efficient(n, config.ansatz_layers, rng);
    const std::int64_t dim = dim_for_qubits(n);
    const ComplexMatrix step_unitary = phase_unitary(config.generator,
                                                     config.tau);

    auto probe_state = [&](const RealVector& gamma) {
        ComplexVector psi = ComplexVector::Zero(dim);
        psi(0) = 1.0;
        probe_circ.with_params(gamma).apply(psi);
        return psi;
    };
    // For a pure probe the two encoded states differ by W(tau) only, so the
    // fidelity collapses to |<psi| W(tau) |psi>| = |Tr(rho W(tau))|.
    auto exact_overlap = [&](const RealVector& gamma) {
        const ComplexVector psi = probe_state(gamma);
        return psi.dot(step_unitary * psi);
    };
    auto exact_surrogate = [&](const RealVector& gamma) {
        return 8.0 * (1.0 - std::min(1.0, std::abs(exact_overlap(gamma)))) /
               (config.tau * config.tau);
    };

    auto evaluate_qae = [&](const RealVector& gamma, std::uint64_t seed_shift,
                            QfiValue& out) {
        const ComplexVector psi = probe_state(gamma);
        ComplexMatrix m = psi * psi.adjoint();
        DensityOperator rho(n, std::move(m));
        DensityOperator rho_theta =
            encode_phase(rho, config.generator, config.theta);
        DensityOperator rho_theta_tau =
            encode_phase(rho, config.generator, config.theta + config.tau);
        QaeConfig qae = config.qae;
        qae.seed += seed_shift;
        out = qfi_surrogate(rho_theta, rho_theta_tau, config.tau,
                            FidelityMethod::Qae, &qae);
    };

    QfiResult result;
    result.trace.reserve(config.outer_iterations + 1);
    RealVector gamma = probe_circ.params();

    for (int t = 0; t <= config.outer_iterations; ++t) {
        QfiIterationRow row;
        row.iteration = t;
        {
            const ComplexVector psi = probe_state(gamma);
            row.oracle_qfi =
                exact_qfi_pure(PureState(n, psi), config.generator);
        }
        if (config.fidelity_method == FidelityMethod::Exact) {
            row.surrogate = exact_surrogate(gamma);
        } else {
            QfiValue value;
            try {
                evaluate_qae(gamma, 0, value);
            } catch (const Error&) {
                // One retry with a reseeded encoder, then give up on the run.
                try {
                    evaluate_qae(gamma, 7919, value);
                } catch (const Error&) {
                    result.aborted = true;
                    result.final_params = gamma;
                    return result;
                }
            }
            row.surrogate = value.value;
            row.delta = value.delta;
            row.band = value.band;
        }
        result.trace.push_back(row);
        if (t == config.outer_iterations) break;

        RealVector grad(gamma.size());
        if (config.fidelity_method == FidelityMethod::Exact) {
            // d|o|/dg = Re(conj(o) do/dg)/|o| with do/dg from the exact
            // two-point shift (the overlap is linear in the density matrix).
            const cxd o = exact_overlap(gamma);
            const double abs_o = std::abs(o);
            for (int k = 0; k < gamma.size(); ++k) {
                RealVector shifted = gamma;
                shifted(k) += M_PI / 2.0;
                const cxd plus = exact_overlap(shifted);
                shifted(k) = gamma(k) - M_PI / 2.0;
                const cxd minus = exact_overlap(shifted);
                const cxd d_o = (plus - minus) / 2.0;
                const double d_abs =
                    abs_o > 1e-15 ? (std::conj(o) * d_o).real() / abs_o : 0.0;
                grad(k) = -8.0 * d_abs / (config.tau * config.tau);
            }
        } else {
            // The estimate depends on gamma through a trained inner loop, so
            // the shift rule does not apply; use central differences.
            const double h = 1e-3;
            for (int k = 0; k < gamma.size(); ++k) {
                RealVector shifted = gamma;
                shifted(k) += h;
                QfiValue plus;
                QfiValue minus;
                try {
                    evaluate_qae(shifted, 0, plus);
                    shifted(k) = gamma(k) - h;
                    evaluate_qae(shifted, 0, minus);
                } catch (const Error&) {
                    result.aborted = true;
                    result.final_params = gamma;
                    return result;
                }
                grad(k) = (plus.value - minus.value) / (2.0 * h);
            }
        }
        gamma += config.outer_lr * grad; // ascent: the surrogate is maximized
    }

    result.final_params = gamma;
    return result;
}

} // namespace qaekit
