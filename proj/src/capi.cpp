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

#include "qaekit/qaekit.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "qaekit/experiment.hpp"
#include "qaekit/fidelity.hpp"
#include "qaekit/gibbs.hpp"
#include "qaekit/qae.hpp"
#include "qaekit/version.hpp"

using namespace qaekit;

struct qaekit_state {
    DensityOperator value;
};
struct qaekit_circuit {
    ParamCircuit value;
};
struct qaekit_model {
    QaeModel value;
};
struct qaekit_hamiltonian {
    PauliHamiltonian value;
};

namespace {

thread_local std::string g_last_error;

qaekit_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return QAEKIT_ERROR_INVALID_ARGUMENT;
        case ErrorCode::DimensionMismatch:
            return QAEKIT_ERROR_DIMENSION_MISMATCH;
        case ErrorCode::NotHermitian: return QAEKIT_ERROR_NOT_HERMITIAN;
        case ErrorCode::NegativeSpectrum: return QAEKIT_ERROR_NEGATIVE_SPECTRUM;
        case ErrorCode::NonConvergence: return QAEKIT_ERROR_NON_CONVERGENCE;
        case ErrorCode::DegenerateCompression:
            return QAEKIT_ERROR_DEGENERATE_COMPRESSION;
        case ErrorCode::ProtocolFailure: return QAEKIT_ERROR_PROTOCOL;
        case ErrorCode::Parse: return QAEKIT_ERROR_PARSE;
        case ErrorCode::Io: return QAEKIT_ERROR_IO;
    }
    return QAEKIT_ERROR_INTERNAL;
}

template <typename Fn>
qaekit_status guarded(Fn&& fn) {
    try {
        fn();
        return QAEKIT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QAEKIT_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QAEKIT_ERROR_INTERNAL;
    }
}

qaekit_status fail_null(const char* what) {
    g_last_error = std::string(what) + ": null argument";
    return QAEKIT_ERROR_INVALID_ARGUMENT;
}

ComplexMatrix matrix_from_interleaved(int num_qubits, const double* data) {
    const std::int64_t dim = dim_for_qubits(num_qubits);
    ComplexMatrix m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            const std::int64_t k = 2 * (r * dim + c);
            m(r, c) = cxd(data[k], data[k + 1]);
        }
    }
    return m;
}

void matrix_to_interleaved(const ComplexMatrix& m, double* out) {
    const std::int64_t dim = m.rows();
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            const std::int64_t k = 2 * (r * dim + c);
            out[k] = m(r, c).real();
            out[k + 1] = m(r, c).imag();
        }
    }
}

QaeConfig convert_config(const qaekit_qae_config& c) {
    QaeConfig config;
    config.num_qubits = c.num_qubits;
    config.latent_qubits = c.latent_qubits;
    config.layers = c.layers;
    config.learning_rate = c.learning_rate;
    config.iterations = c.iterations;
    config.seed = c.seed;
    return config;
}

} // namespace

extern "C" {

const char* qaekit_version(void) { return QAEKIT_VERSION; }

const char* qaekit_build_id(void) { return QAEKIT_BUILD_ID; }

const char* qaekit_status_name(qaekit_status status) {
    switch (status) {
        case QAEKIT_OK: return "ok";
        case QAEKIT_ERROR_INVALID_ARGUMENT: return "invalid-argument";
        case QAEKIT_ERROR_DIMENSION_MISMATCH: return "dimension-mismatch";
        case QAEKIT_ERROR_NOT_HERMITIAN: return "not-hermitian";
        case QAEKIT_ERROR_NEGATIVE_SPECTRUM: return "negative-spectrum";
        case QAEKIT_ERROR_NON_CONVERGENCE: return "non-convergence";
        case QAEKIT_ERROR_DEGENERATE_COMPRESSION:
            return "degenerate-compression";
        case QAEKIT_ERROR_PROTOCOL: return "protocol-failure";
        case QAEKIT_ERROR_PARSE: return "parse-error";
        case QAEKIT_ERROR_IO: return "io-error";
        case QAEKIT_ERROR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* qaekit_last_error(void) { return g_last_error.c_str(); }

/* ---------------------------------------------------------------- states */

qaekit_status qaekit_state_create(int num_qubits, const double* matrix,
                                  qaekit_state** out) {
    if (!matrix || !out) return fail_null("qaekit_state_create");
    return guarded([&] {
        *out = new qaekit_state{
            DensityOperator(num_qubits,
                            matrix_from_interleaved(num_qubits, matrix))};
    });
}

qaekit_status qaekit_state_noisy(int num_qubits, const double* base, double p,
                                 int r, double a, qaekit_state** out) {
    if (!out) return fail_null("qaekit_state_noisy");
    return guarded([&] {
        PureState base_state = PureState::zero(num_qubits);
        if (base) {
            const std::int64_t dim = dim_for_qubits(num_qubits);
            ComplexVector v(dim);
            for (std::int64_t i = 0; i < dim; ++i) {
                v(i) = cxd(base[2 * i], base[2 * i + 1]);
            }
            base_state = PureState(num_qubits, std::move(v));
        }
        *out = new qaekit_state{
            build_noisy_state(NoisyStateSpec(std::move(base_state), p, r, a))};
    });
}

qaekit_status qaekit_state_random(int num_qubits, int rank, uint64_t seed,
                                  qaekit_state** out) {
    if (!out) return fail_null("qaekit_state_random");
    return guarded([&] {
        Rng rng(seed);
        *out = new qaekit_state{random_density_operator(num_qubits, rank, rng)};
    });
}

qaekit_status qaekit_state_num_qubits(const qaekit_state* state, int* out) {
    if (!state || !out) return fail_null("qaekit_state_num_qubits");
    *out = state->value.num_qubits();
    return QAEKIT_OK;
}

qaekit_status qaekit_state_copy_matrix(const qaekit_state* state, double* out) {
    if (!state || !out) return fail_null("qaekit_state_copy_matrix");
    matrix_to_interleaved(state->value.matrix(), out);
    return QAEKIT_OK;
}

qaekit_status qaekit_state_partial_trace(const qaekit_state* state,
                                         const int* keep, int keep_count,
                                         qaekit_state** out) {
    if (!state || !out || (!keep && keep_count > 0)) {
        return fail_null("qaekit_state_partial_trace");
    }
    return guarded([&] {
        std::set<int> keep_set(keep, keep + keep_count);
        *out = new qaekit_state{partial_trace(state->value, keep_set)};
    });
}

void qaekit_state_free(qaekit_state* state) { delete state; }

qaekit_status qaekit_fidelity(const qaekit_state* rho,
                              const qaekit_state* kappa, double* out) {
    if (!rho || !kappa || !out) return fail_null("qaekit_fidelity");
    return guarded([&] { *out = uhlmann_fidelity(rho->value, kappa->value); });
}

qaekit_status qaekit_trace_distance(const qaekit_state* a,
                                    const qaekit_state* b, double* out) {
    if (!a || !b || !out) return fail_null("qaekit_trace_distance");
    return guarded([&] { *out = trace_distance(a->value, b->value); });
}

qaekit_status qaekit_sub_fidelity(const qaekit_state* rho,
                                  const qaekit_state* kappa, double* out) {
    if (!rho || !kappa || !out) return fail_null("qaekit_sub_fidelity");
    return guarded([&] { *out = sub_fidelity(rho->value, kappa->value); });
}

qaekit_status qaekit_super_fidelity(const qaekit_state* rho,
                                    const qaekit_state* kappa, double* out) {
    if (!rho || !kappa || !out) return fail_null("qaekit_super_fidelity");
    return guarded([&] { *out = super_fidelity(rho->value, kappa->value); });
}

/* -------------------------------------------------------------- circuits */

qaekit_status qaekit_circuit_hardware_efficient(int num_qubits, int layers,
                                                qaekit_circuit** out) {
    if (!out) return fail_null("qaekit_circuit_hardware_efficient");
    return guarded([&] {
        *out = new qaekit_circuit{build_hardware_efficient(num_qubits, layers)};
    });
}

qaekit_status qaekit_circuit_param_count(const qaekit_circuit* circ, int* out) {
    if (!circ || !out) return fail_null("qaekit_circuit_param_count");
    *out = circ->value.param_count();
    return QAEKIT_OK;
}

qaekit_status qaekit_circuit_get_params(const qaekit_circuit* circ, double* out,
                                        int capacity) {
    if (!circ || !out) return fail_null("qaekit_circuit_get_params");
    return guarded([&] {
        if (capacity < circ->value.param_count()) {
            raise(ErrorCode::InvalidArgument,
                  "qaekit_circuit_get_params: buffer too small");
        }
        for (int i = 0; i < circ->value.param_count(); ++i) {
            out[i] = circ->value.params()(i);
        }
    });
}

qaekit_status qaekit_circuit_set_params(qaekit_circuit* circ,
                                        const double* params, int count) {
    if (!circ || !params) return fail_null("qaekit_circuit_set_params");
    return guarded([&] {
        if (count != circ->value.param_count()) {
            raise(ErrorCode::InvalidArgument,
                  "qaekit_circuit_set_params: wrong parameter count");
        }
        RealVector p(count);
        for (int i = 0; i < count; ++i) p(i) = params[i];
        circ->value = circ->value.with_params(std::move(p));
    });
}

qaekit_status qaekit_circuit_evolve(const qaekit_circuit* circ,
                                    const qaekit_state* rho,
                                    qaekit_state** out) {
    if (!circ || !rho || !out) return fail_null("qaekit_circuit_evolve");
    return guarded(
        [&] { *out = new qaekit_state{evolve(circ->value, rho->value)}; });
}

qaekit_status qaekit_circuit_save(const qaekit_circuit* circ,
                                  const char* path) {
    if (!circ || !path) return fail_null("qaekit_circuit_save");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) raise(ErrorCode::Io, std::string("cannot open ") + path);
        save_circuit(circ->value, out);
        if (!out.good()) {
            raise(ErrorCode::Io, std::string("write failed for ") + path);
        }
    });
}

qaekit_status qaekit_circuit_load(const char* path, qaekit_circuit** out) {
    if (!path || !out) return fail_null("qaekit_circuit_load");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) raise(ErrorCode::Io, std::string("cannot open ") + path);
        *out = new qaekit_circuit{load_circuit(in)};
    });
}

void qaekit_circuit_free(qaekit_circuit* circ) { delete circ; }

/* ---------------------------------------------------------- auto-encoder */

void qaekit_qae_config_init(qaekit_qae_config* config) {
    if (!config) return;
    config->num_qubits = 0;
    config->latent_qubits = 0;
    config->layers = 5;
    config->learning_rate = 0.8;
    config->iterations = 200;
    config->seed = 1;
}

qaekit_status qaekit_qae_train(const qaekit_state* rho,
                               const qaekit_qae_config* config,
                               qaekit_model** out) {
    if (!rho || !config || !out) return fail_null("qaekit_qae_train");
    return guarded([&] {
        *out = new qaekit_model{train(rho->value, convert_config(*config))};
    });
}

qaekit_status qaekit_model_final_loss(const qaekit_model* model, double* out) {
    if (!model || !out) return fail_null("qaekit_model_final_loss");
    *out = model->value.final_loss;
    return QAEKIT_OK;
}

qaekit_status qaekit_model_loss_trace(const qaekit_model* model, double* out,
                                      int capacity, int* length) {
    if (!model || !length) return fail_null("qaekit_model_loss_trace");
    const int n = static_cast<int>(model->value.loss_trace.size());
    *length = n;
    if (out) {
        const int count = capacity < n ? capacity : n;
        for (int i = 0; i < count; ++i) out[i] = model->value.loss_trace[i];
    }
    return QAEKIT_OK;
}

qaekit_status qaekit_model_latent_spectrum(const qaekit_model* model,
                                           const qaekit_state* rho, double* out,
                                           double* success_prob) {
    if (!model || !rho || !out) return fail_null("qaekit_model_latent_spectrum");
    return guarded([&] {
        CompressedState compressed = compress(model->value, rho->value);
        SpectralReadout readout = spectral_readout(model->value, compressed);
        for (std::int64_t i = 0; i < readout.latent.dim(); ++i) {
            out[i] = readout.latent.eigenvalues()(i);
        }
        if (success_prob) *success_prob = compressed.success_prob;
    });
}

qaekit_status qaekit_model_compress(const qaekit_model* model,
                                    const qaekit_state* rho,
                                    qaekit_state** compressed,
                                    double* success_prob) {
    if (!model || !rho || !compressed) return fail_null("qaekit_model_compress");
    return guarded([&] {
        CompressedState result = compress(model->value, rho->value);
        if (success_prob) *success_prob = result.success_prob;
        *compressed = new qaekit_state{std::move(result.state)};
    });
}

qaekit_status qaekit_model_reconstruct(const qaekit_model* model,
                                       const qaekit_state* rho,
                                       qaekit_state** out) {
    if (!model || !rho || !out) return fail_null("qaekit_model_reconstruct");
    return guarded([&] {
        CompressedState compressed = compress(model->value, rho->value);
        SpectralReadout readout = spectral_readout(model->value, compressed);
        *out = new qaekit_state{reconstructed_state(model->value, readout)};
    });
}

qaekit_status qaekit_model_save(const qaekit_model* model, const char* path) {
    if (!model || !path) return fail_null("qaekit_model_save");
    return guarded([&] { save_model_file(model->value, path); });
}

qaekit_status qaekit_model_load(const char* path, qaekit_model** out) {
    if (!path || !out) return fail_null("qaekit_model_load");
    return guarded([&] { *out = new qaekit_model{load_model_file(path)}; });
}

void qaekit_model_free(qaekit_model* model) { delete model; }

/* ---------------------------------------------------- fidelity estimators */

qaekit_status qaekit_estimate_fidelity(const qaekit_state* rho,
                                       const qaekit_state* kappa,
                                       const qaekit_qae_config* config,
                                       qaekit_fidelity_estimate* out) {
    if (!rho || !kappa || !config || !out) {
        return fail_null("qaekit_estimate_fidelity");
    }
    return guarded([&] {
        const FidelityEstimate est =
            estimate_fidelity_qae(rho->value, kappa->value,
                                  convert_config(*config));
        out->value = est.value;
        out->delta = est.delta;
        out->lower = est.lower;
        out->upper = est.upper;
    });
}

qaekit_status qaekit_estimate_fidelity_resource_efficient(
    const qaekit_state* rho, const qaekit_state* kappa,
    const qaekit_qae_config* config_rho, const qaekit_qae_config* config_kappa,
    qaekit_fidelity_estimate* out) {
    if (!rho || !kappa || !config_rho || !config_kappa || !out) {
        return fail_null("qaekit_estimate_fidelity_resource_efficient");
    }
    return guarded([&] {
        const FidelityEstimate est = estimate_fidelity_resource_efficient(
            rho->value, kappa->value, convert_config(*config_rho),
            convert_config(*config_kappa));
        out->value = est.value;
        out->delta = est.delta;
        out->lower = est.lower;
        out->upper = est.upper;
    });
}

/* ------------------------------------------------------------ hamiltonians */

qaekit_status qaekit_hamiltonian_parse(const char* text, int num_qubits,
                                       qaekit_hamiltonian** out) {
    if (!text || !out) return fail_null("qaekit_hamiltonian_parse");
    return guarded([&] {
        *out = new qaekit_hamiltonian{
            PauliHamiltonian::parse(text, num_qubits)};
    });
}

qaekit_status qaekit_exact_gibbs(const qaekit_hamiltonian* h, double beta,
                                 qaekit_state** out) {
    if (!h || !out) return fail_null("qaekit_exact_gibbs");
    return guarded(
        [&] { *out = new qaekit_state{exact_gibbs(h->value, beta)}; });
}

void qaekit_hamiltonian_free(qaekit_hamiltonian* h) { delete h; }

/* ------------------------------------------------------------ experiments */

qaekit_status qaekit_experiment_run(const char* config_path,
                                    const char* const* overrides,
                                    int n_overrides, const char* out_path,
                                    int paper_scale) {
    if (!config_path || (!overrides && n_overrides > 0)) {
        return fail_null("qaekit_experiment_run");
    }
    return guarded([&] {
        nlohmann::json config = load_config_file(config_path);
        if (paper_scale) apply_paper_scale(config);
        for (int i = 0; i < n_overrides; ++i) {
            apply_override(config, overrides[i]);
        }
        std::string path = out_path ? out_path
                                    : config.value("output", std::string());
        if (path.empty()) {
            raise(ErrorCode::InvalidArgument,
                  "config.output: missing (or pass an output path)");
        }
        run_experiment_to_file(config, path);
    });
}

qaekit_status qaekit_experiment_sweep(const char* config_path, const char* axis,
                                      const char* values_csv,
                                      const char* const* overrides,
                                      int n_overrides, const char* out_path,
                                      int workers) {
    if (!config_path || !axis || !values_csv ||
        (!overrides && n_overrides > 0)) {
        return fail_null("qaekit_experiment_sweep");
    }
    return guarded([&] {
        nlohmann::json config = load_config_file(config_path);
        for (int i = 0; i < n_overrides; ++i) {
            apply_override(config, overrides[i]);
        }
        std::vector<std::string> values;
        std::stringstream stream(values_csv);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (!item.empty()) values.push_back(item);
        }
        std::string path = out_path ? out_path
                                    : config.value("output", std::string());
        if (path.empty()) {
            raise(ErrorCode::InvalidArgument,
                  "config.output: missing (or pass an output path)");
        }
        sweep_experiment(config, axis, values, path, workers);
    });
}

} // extern "C"
