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

#include "qaekit/gibbs.hpp"

#include <cmath>
#include <sstream>

namespace qaekit {

namespace {

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

RealVector trace_powers_from_eigenvalues(const RealVector& eigenvalues,
                                         int truncation) {
    RealVector powers(truncation + 1);
    for (int j = 0; j <= truncation; ++j) {
        double sum = 0.0;
        for (std::int64_t i = 0; i < eigenvalues.size(); ++i) {
            sum += std::pow(eigenvalues(i), j + 1);
        }
        powers(j) = sum;
    }
    return powers;
}

// Entropy-surrogate coefficients: the trace-polynomial set by default, or the
// sign-flipped R=2 variant kept for comparison runs.
RealVector entropy_coefficients(const GibbsConfig& config) {
    if (!config.use_main_text_entropy) {
        return truncation_coefficients(config.truncation);
    }
    if (config.truncation != 2) {
        raise(ErrorCode::InvalidArgument,
              "use_main_text_entropy is only defined for truncation = 2");
    }
    RealVector c(3);
    c << 1.5, 2.0, 0.5;
    return c;
}

double objective_value(double energy, const RealVector& coeffs,
                       const RealVector& trace_powers, double beta) {
    double entropy = 0.0;
    for (int j = 0; j < coeffs.size(); ++j) {
        entropy += coeffs(j) * trace_powers(j);
    }
    return energy - entropy / beta;
}

} // namespace

void GibbsConfig::validate() const {
    if (beta <= 0.0) {
        raise(ErrorCode::InvalidArgument, "GibbsConfig: beta must be positive");
    }
    if (truncation < 1) {
        raise(ErrorCode::InvalidArgument, "GibbsConfig: truncation must be >= 1");
    }
    if (outer_iterations < 0) {
        raise(ErrorCode::InvalidArgument,
              "GibbsConfig: outer_iterations must be >= 0");
    }
    if (outer_lr <= 0.0) {
        raise(ErrorCode::InvalidArgument, "GibbsConfig: outer_lr must be positive");
    }
    if (ansatz_layers < 1) {
        raise(ErrorCode::InvalidArgument,
              "GibbsConfig: ansatz_layers must be >= 1");
    }
    if (ancilla_qubits < 0) {
        raise(ErrorCode::InvalidArgument,
              "GibbsConfig: ancilla_qubits must be >= 0");
    }
    if (eigen_source == EigenSource::Qae) {
        qae.validate();
        if (qae.num_qubits != hamiltonian.num_qubits()) {
            raise(ErrorCode::InvalidArgument,
                  "GibbsConfig: qae.num_qubits must equal the system size");
        }
    }
}

DensityOperator exact_gibbs(const PauliHamiltonian& h, double beta) {
    if (beta <= 0.0) {
        raise(ErrorCode::InvalidArgument, "exact_gibbs: beta must be positive");
    }
    SpectralDecomposition eig = eig_hermitian(h.matrix());
    const std::int64_t dim = eig.dim();
    const double e_min = eig.eigenvalues().minCoeff();
    RealVector weights(dim);
    double norm = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
        weights(i) = std::exp(-beta * (eig.eigenvalues()(i) - e_min));
        norm += weights(i);
    }
    weights /= norm;
    ComplexMatrix m = eig.eigenvectors() * weights.asDiagonal() *
                      eig.eigenvectors().adjoint();
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(h.num_qubits(), std::move(m));
}

RealVector truncation_coefficients(int truncation) {
    if (truncation < 1) {
        raise(ErrorCode::InvalidArgument,
              "truncation_coefficients: truncation must be >= 1");
    }
    RealVector c = RealVector::Zero(truncation + 1);
    for (int k = 1; k <= truncation; ++k) {
        c(0) += 1.0 / k;
    }
    for (int j = 1; j <= truncation; ++j) {
        double sum = 0.0;
        for (int k = j; k <= truncation; ++k) {
            sum += binomial(k, j) / k;
        }
        c(j) = (j % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return c;
}

double truncated_entropy(const DensityOperator& rho, int truncation) {
    const RealVector coeffs = truncation_coefficients(truncation);
    SpectralDecomposition eig = eig_hermitian(rho.matrix());
    const RealVector powers =
        trace_powers_from_eigenvalues(eig.eigenvalues(), truncation);
    double entropy = 0.0;
    for (int j = 0; j <= truncation; ++j) {
        entropy += coeffs(j) * powers(j);
    }
    return entropy;
}

double truncated_free_energy(const DensityOperator& rho,
                             const PauliHamiltonian& h, double beta,
                             int truncation, const RealVector& trace_powers) {
    if (beta <= 0.0) {
        raise(ErrorCode::InvalidArgument,
              "truncated_free_energy: beta must be positive");
    }
    if (trace_powers.size() != truncation + 1) {
        std::ostringstream msg;
        msg << "truncated_free_energy: expected " << truncation + 1
            << " trace powers, got " << trace_powers.size();
        raise(ErrorCode::InvalidArgument, msg.str());
    }
    if (h.num_qubits() != rho.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "truncated_free_energy: state and Hamiltonian sizes differ");
    }
    const double energy = (h.matrix() * rho.matrix()).trace().real();
    const RealVector coeffs = truncation_coefficients(truncation);
    return objective_value(energy, coeffs, trace_powers, beta);
}

DensityOperator prepare_variational_state(const ParamCircuit& circ,
                                          int system_qubits,
                                          int ancilla_qubits) {
    if (circ.num_qubits() != system_qubits + ancilla_qubits) {
        raise(ErrorCode::DimensionMismatch,
              "prepare_variational_state: circuit must act on system+ancilla");
    }
    const std::int64_t dim = dim_for_qubits(circ.num_qubits());
    ComplexVector psi = ComplexVector::Zero(dim);
    psi(0) = 1.0;
    circ.apply(psi);
    if (ancilla_qubits == 0) {
        ComplexMatrix m = psi * psi.adjoint();
        return DensityOperator(system_qubits, std::move(m));
    }
    // The ancillas are the leading qubits: index = a * 2^B + b. Tracing them
    // out reduces to a Gram matrix of the 2^A rows of psi.
    const std::int64_t dim_sys = dim_for_qubits(system_qubits);
    const std::int64_t dim_anc = dim_for_qubits(ancilla_qubits);
    ComplexMatrix rho = ComplexMatrix::Zero(dim_sys, dim_sys);
    for (std::int64_t a = 0; a < dim_anc; ++a) {
        const auto row = psi.segment(a * dim_sys, dim_sys);
        rho += row * row.adjoint();
    }
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return DensityOperator(system_qubits, std::move(rho));
}

double truncation_delta(int truncation) {
    if (truncation < 1) {
        raise(ErrorCode::InvalidArgument,
              "truncation_delta: truncation must be >= 1");
    }
    // Largest Delta in (0, 1/e) with -Delta ln Delta < (1-Delta)^{R+1}/(R+1).
    auto margin = [truncation](double d) {
        return std::pow(1.0 - d, truncation + 1) / (truncation + 1) +
               d * std::log(d);
    };
    double lo = 1e-12;
    double hi = std::exp(-1.0) - 1e-12;
    if (margin(hi) > 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2.0;
        if (margin(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double fidelity_lower_bound(double epsilon1, double delta, double beta,
                            int rank, int truncation, double Delta,
                            double c_max) {
    if (delta >= 1.0) {
        raise(ErrorCode::InvalidArgument,
              "fidelity_lower_bound: delta must be < 1");
    }
    const double truncation_term = 2.0 * beta * rank / (truncation + 1) *
                                   std::pow(1.0 - Delta, truncation + 1);
    const double qae_term = 4.0 * c_max * delta / (1.0 - 2.0 * delta);
    const double radicand = truncation_term + 2.0 * beta * epsilon1 + qae_term;
    return 1.0 - std::sqrt(std::max(radicand, 0.0));
}

double fidelity_lower_bound_compact(double epsilon1, double delta, double beta,
                                    int rank, int truncation, double Delta,
                                    double c_max) {
    if (delta >= 1.0) {
        raise(ErrorCode::InvalidArgument,
              "fidelity_lower_bound_compact: delta must be < 1");
    }
    const double eps = epsilon1 + 2.0 * rank / (truncation + 1) *
                                      std::pow(1.0 - Delta, truncation + 1);
    const double radicand = 2.0 * beta * eps + c_max * delta / (1.0 - delta);
    return 1.0 - std::sqrt(std::max(radicand, 0.0));
}

GibbsResult solve_gibbs(const GibbsConfig& config) {
    config.validate();
    const int system_qubits = config.hamiltonian.num_qubits();
    const int total_qubits = system_qubits + config.ancilla_qubits;
    const double beta = config.beta;
    const int truncation = config.truncation;

    const ComplexMatrix h_matrix = config.hamiltonian.matrix();
    const DensityOperator gibbs_target = exact_gibbs(config.hamiltonian, beta);
    const RealVector coeffs = entropy_coefficients(config);
    const RealVector c_reference = truncation_coefficients(truncation);
    const double c_max = c_reference.cwiseAbs().maxCoeff();

    Rng rng(config.seed);
    ParamCircuit prep =
        build_hardware_efficient(total_qubits, config.ansatz_layers, rng);

    // Inner-encoder parameters persist across outer iterations (warm start).
    RealVector encoder_params;
    if (config.eigen_source == EigenSource::Qae) {
        Rng encoder_rng(config.qae.seed);
        encoder_params =
            build_hardware_efficient(config.qae.num_qubits, config.qae.layers,
                                     encoder_rng)
                .params();
    }

    GibbsResult result;
    result.trace.reserve(config.outer_iterations + 1);
    int discrepancy_violations = 0;

    auto prepare_at = [&](const RealVector& gamma) {
        return prepare_variational_state(prep.with_params(gamma), system_qubits,
                                         config.ancilla_qubits);
    };

    RealVector gamma = prep.params();
    for (int t = 0; t <= config.outer_iterations; ++t) {
        const DensityOperator rho = prepare_at(gamma);
        const double energy = (h_matrix * rho.matrix()).trace().real();

        SpectralDecomposition exact_eig = eig_hermitian(rho.matrix());
        const RealVector exact_powers =
            trace_powers_from_eigenvalues(exact_eig.eigenvalues(), truncation);
        const double f_exact =
            objective_value(energy, coeffs, exact_powers, beta);

        GibbsIterationRow row;
        row.iteration = t;
        row.free_energy_exact = f_exact;
        row.fidelity = uhlmann_fidelity(rho, gibbs_target);

        // Eigenvalue source for the objective and for the descent direction.
        RealVector source_powers = exact_powers;
        std::vector<PureState> source_frame;
        RealVector source_weights;
        if (config.eigen_source == EigenSource::Qae) {
            QaeModel model = config.warm_start
                                 ? train_from(rho, config.qae, encoder_params)
                                 : train(rho, config.qae);
            if (config.warm_start) {
                encoder_params = model.circuit.params();
            }
            row.delta = model.final_loss;
            try {
                CompressedState compressed = compress(model, rho);
                SpectralReadout readout = spectral_readout(model, compressed);
                source_powers = trace_powers_from_eigenvalues(
                    readout.latent.eigenvalues(), truncation);
                source_frame = std::move(readout.reconstructed);
                source_weights = readout.latent.eigenvalues();
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DegenerateCompression) throw;
                row.oracle_fallback = true;
            }
        }
        row.free_energy = objective_value(energy, coeffs, source_powers, beta);

        if (config.eigen_source == EigenSource::Qae && !row.oracle_fallback &&
            row.delta < 0.5) {
            const double bound =
                2.0 * c_max * row.delta / (beta * (1.0 - 2.0 * row.delta));
            if (std::abs(row.free_energy - row.free_energy_exact) >
                bound + 1e-12) {
                ++discrepancy_violations;
            }
        }
        result.trace.push_back(row);
        if (t == config.outer_iterations) break;

        // Matrix powers driving the descent direction; in QAE mode they are
        // rebuilt from the readout frame, in oracle mode from rho itself.
        const std::int64_t dim_sys = dim_for_qubits(system_qubits);
        std::vector<ComplexMatrix> powers(truncation + 1);
        powers[0] = ComplexMatrix::Identity(dim_sys, dim_sys);
        if (config.eigen_source == EigenSource::Qae && !row.oracle_fallback) {
            ComplexMatrix rho_hat = ComplexMatrix::Zero(dim_sys, dim_sys);
            for (std::size_t i = 0; i < source_frame.size(); ++i) {
                const ComplexVector& phi = source_frame[i].amplitudes();
                rho_hat += source_weights(static_cast<std::int64_t>(i)) *
                           (phi * phi.adjoint());
            }
            for (int j = 1; j <= truncation; ++j) {
                powers[j] = powers[j - 1] * rho_hat;
            }
        } else {
            for (int j = 1; j <= truncation; ++j) {
                powers[j] = powers[j - 1] * rho.matrix();
            }
        }

        RealVector grad(gamma.size());
        for (int k = 0; k < gamma.size(); ++k) {
            RealVector shifted = gamma;
            shifted(k) += M_PI / 2.0;
            const ComplexMatrix plus = prepare_at(shifted).matrix();
            shifted(k) = gamma(k) - M_PI / 2.0;
            const ComplexMatrix minus = prepare_at(shifted).matrix();
            const ComplexMatrix d_rho = (plus - minus) / 2.0;

            double g = (h_matrix * d_rho).trace().real();
            for (int j = 1; j <= truncation; ++j) {
                g -= coeffs(j) * (j + 1) / beta *
                     (powers[j] * d_rho).trace().real();
            }
            grad(k) = g;
        }
        gamma -= config.outer_lr * grad;
    }

    result.final_params = gamma;
    result.final_fidelity = result.trace.back().fidelity;
    result.discrepancy_violations = discrepancy_violations;

    // Empirical surrogate for the optimization error: distance of the final
    // objective from the best objective seen along the run.
    double best = result.trace.front().free_energy;
    for (const GibbsIterationRow& row : result.trace) {
        best = std::min(best, row.free_energy);
    }
    result.epsilon1_surrogate = result.trace.back().free_energy - best;

    const DensityOperator final_rho = prepare_at(gamma);
    SpectralDecomposition final_eig = eig_hermitian(final_rho.matrix());
    int rank = 0;
    for (std::int64_t i = 0; i < final_eig.dim(); ++i) {
        if (final_eig.eigenvalues()(i) > 1e-12) ++rank;
    }
    const double Delta = truncation_delta(truncation);
    const double final_delta = result.trace.back().delta;
    result.fidelity_bound = fidelity_lower_bound(
        result.epsilon1_surrogate, final_delta, beta, rank, truncation, Delta,
        c_max);
    result.fidelity_bound_compact = fidelity_lower_bound_compact(
        result.epsilon1_surrogate, final_delta, beta, rank, truncation, Delta,
        c_max);
    return result;
}

} // namespace qaekit
