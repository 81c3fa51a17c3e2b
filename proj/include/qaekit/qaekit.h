/* Copyright 2026 The qaekit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the qaekit shared library.
 *
 * Conventions:
 *   - Every function returns a qaekit_status; QAEKIT_OK is 0.
 *   - On failure, qaekit_last_error() returns a thread-local message.
 *   - Objects are opaque handles released with the matching _free call;
 *     freeing NULL is a no-op.
 *   - Complex buffers are interleaved doubles (re0, im0, re1, im1, ...) in
 *     row-major order. Operators on n qubits are 2^n x 2^n; qubit 0 is the
 *     most significant bit of the basis index.
 */

#ifndef QAEKIT_QAEKIT_H
#define QAEKIT_QAEKIT_H

#include <stdint.h>

#if defined(_WIN32)
#define QAEKIT_API __declspec(dllexport)
#else
#define QAEKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qaekit_status {
    QAEKIT_OK = 0,
    QAEKIT_ERROR_INVALID_ARGUMENT = 1,
    QAEKIT_ERROR_DIMENSION_MISMATCH = 2,
    QAEKIT_ERROR_NOT_HERMITIAN = 3,
    QAEKIT_ERROR_NEGATIVE_SPECTRUM = 4,
    QAEKIT_ERROR_NON_CONVERGENCE = 5,
    QAEKIT_ERROR_DEGENERATE_COMPRESSION = 6,
    QAEKIT_ERROR_PROTOCOL = 7,
    QAEKIT_ERROR_PARSE = 8,
    QAEKIT_ERROR_IO = 9,
    QAEKIT_ERROR_INTERNAL = 10
} qaekit_status;

QAEKIT_API const char* qaekit_version(void);
QAEKIT_API const char* qaekit_build_id(void);
QAEKIT_API const char* qaekit_status_name(qaekit_status status);
/* Message from the most recent failing call on this thread. */
QAEKIT_API const char* qaekit_last_error(void);

typedef struct qaekit_state qaekit_state;     /* density operator */
typedef struct qaekit_circuit qaekit_circuit; /* parameterized circuit */
typedef struct qaekit_model qaekit_model;     /* trained auto-encoder */
typedef struct qaekit_hamiltonian qaekit_hamiltonian;

/* ------------------------------------------------------------------ states */

/* `matrix` holds 2 * 4^n doubles (interleaved complex, row-major). */
QAEKIT_API qaekit_status qaekit_state_create(int num_qubits,
                                             const double* matrix,
                                             qaekit_state** out);
/* rho = p |psi><psi| + (1-p) V(r) with V_ii ~ 1.5^(-a i), i = 1..r.
 * `base` holds 2 * 2^n doubles (interleaved amplitudes); NULL means |0...0>.
 */
QAEKIT_API qaekit_status qaekit_state_noisy(int num_qubits, const double* base,
                                            double p, int r, double a,
                                            qaekit_state** out);
QAEKIT_API qaekit_status qaekit_state_random(int num_qubits, int rank,
                                             uint64_t seed, qaekit_state** out);
QAEKIT_API qaekit_status qaekit_state_num_qubits(const qaekit_state* state,
                                                 int* out);
/* `out` must hold 2 * 4^n doubles. */
QAEKIT_API qaekit_status qaekit_state_copy_matrix(const qaekit_state* state,
                                                  double* out);
QAEKIT_API qaekit_status qaekit_state_partial_trace(const qaekit_state* state,
                                                    const int* keep,
                                                    int keep_count,
                                                    qaekit_state** out);
QAEKIT_API void qaekit_state_free(qaekit_state* state);

QAEKIT_API qaekit_status qaekit_fidelity(const qaekit_state* rho,
                                         const qaekit_state* kappa,
                                         double* out);
QAEKIT_API qaekit_status qaekit_trace_distance(const qaekit_state* a,
                                               const qaekit_state* b,
                                               double* out);
QAEKIT_API qaekit_status qaekit_sub_fidelity(const qaekit_state* rho,
                                             const qaekit_state* kappa,
                                             double* out);
QAEKIT_API qaekit_status qaekit_super_fidelity(const qaekit_state* rho,
                                               const qaekit_state* kappa,
                                               double* out);

/* ---------------------------------------------------------------- circuits */

QAEKIT_API qaekit_status qaekit_circuit_hardware_efficient(
    int num_qubits, int layers, qaekit_circuit** out);
QAEKIT_API qaekit_status qaekit_circuit_param_count(const qaekit_circuit* circ,
                                                    int* out);
QAEKIT_API qaekit_status qaekit_circuit_get_params(const qaekit_circuit* circ,
                                                   double* out, int capacity);
QAEKIT_API qaekit_status qaekit_circuit_set_params(qaekit_circuit* circ,
                                                   const double* params,
                                                   int count);
QAEKIT_API qaekit_status qaekit_circuit_evolve(const qaekit_circuit* circ,
                                               const qaekit_state* rho,
                                               qaekit_state** out);
QAEKIT_API qaekit_status qaekit_circuit_save(const qaekit_circuit* circ,
                                             const char* path);
QAEKIT_API qaekit_status qaekit_circuit_load(const char* path,
                                             qaekit_circuit** out);
QAEKIT_API void qaekit_circuit_free(qaekit_circuit* circ);

/* ------------------------------------------------------------ auto-encoder */

typedef struct qaekit_qae_config {
    int num_qubits;
    int latent_qubits;
    int layers;
    double learning_rate;
    int iterations;
    uint64_t seed;
} qaekit_qae_config;

/* Reasonable defaults (5 layers, rate 0.8, 200 iterations, seed 1). */
QAEKIT_API void qaekit_qae_config_init(qaekit_qae_config* config);

QAEKIT_API qaekit_status qaekit_qae_train(const qaekit_state* rho,
                                          const qaekit_qae_config* config,
                                          qaekit_model** out);
QAEKIT_API qaekit_status qaekit_model_final_loss(const qaekit_model* model,
                                                 double* out);
/* Returns the trace length; copies min(capacity, length) values into `out`
 * when `out` is non-NULL. */
QAEKIT_API qaekit_status qaekit_model_loss_trace(const qaekit_model* model,
                                                 double* out, int capacity,
                                                 int* length);
/* Latent eigenvalues, descending; `out` must hold 2^latent_qubits doubles. */
QAEKIT_API qaekit_status qaekit_model_latent_spectrum(const qaekit_model* model,
                                                      const qaekit_state* rho,
                                                      double* out,
                                                      double* success_prob);
QAEKIT_API qaekit_status qaekit_model_compress(const qaekit_model* model,
                                               const qaekit_state* rho,
                                               qaekit_state** compressed,
                                               double* success_prob);
QAEKIT_API qaekit_status qaekit_model_reconstruct(const qaekit_model* model,
                                                  const qaekit_state* rho,
                                                  qaekit_state** out);
QAEKIT_API qaekit_status qaekit_model_save(const qaekit_model* model,
                                           const char* path);
QAEKIT_API qaekit_status qaekit_model_load(const char* path,
                                           qaekit_model** out);
QAEKIT_API void qaekit_model_free(qaekit_model* model);

/* ------------------------------------------------------ fidelity estimators */

typedef struct qaekit_fidelity_estimate {
    double value;
    double delta;
    double lower;
    double upper;
} qaekit_fidelity_estimate;

QAEKIT_API qaekit_status qaekit_estimate_fidelity(
    const qaekit_state* rho, const qaekit_state* kappa,
    const qaekit_qae_config* config, qaekit_fidelity_estimate* out);
QAEKIT_API qaekit_status qaekit_estimate_fidelity_resource_efficient(
    const qaekit_state* rho, const qaekit_state* kappa,
    const qaekit_qae_config* config_rho, const qaekit_qae_config* config_kappa,
    qaekit_fidelity_estimate* out);

/* ------------------------------------------------------------ hamiltonians */

/* `text` holds one term per line: "coefficient pauli-string", e.g. "-1 ZZI".
 */
QAEKIT_API qaekit_status qaekit_hamiltonian_parse(const char* text,
                                                  int num_qubits,
                                                  qaekit_hamiltonian** out);
QAEKIT_API qaekit_status qaekit_exact_gibbs(const qaekit_hamiltonian* h,
                                            double beta, qaekit_state** out);
QAEKIT_API void qaekit_hamiltonian_free(qaekit_hamiltonian* h);

/* -------------------------------------------------------------- experiments */

/* Runs the experiment described by a JSON config file and writes one record
 * file. `overrides` holds `n_overrides` "dotted.path=value" strings applied
 * in order; `out_path` overrides the config's output field when non-NULL.
 * `paper_scale` nonzero swaps the fidelity protocols to the full-size setup.
 */
QAEKIT_API qaekit_status qaekit_experiment_run(const char* config_path,
                                               const char* const* overrides,
                                               int n_overrides,
                                               const char* out_path,
                                               int paper_scale);

/* One run per comma-separated axis value, fanned out over `workers` threads;
 * writes per-value records plus an index file next to `out_path`. */
QAEKIT_API qaekit_status qaekit_experiment_sweep(const char* config_path,
                                                 const char* axis,
                                                 const char* values_csv,
                                                 const char* const* overrides,
                                                 int n_overrides,
                                                 const char* out_path,
                                                 int workers);

#ifdef __cplusplus
}
#endif

#endif /* QAEKIT_QAEKIT_H */
