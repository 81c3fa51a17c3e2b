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

#ifndef QAEKIT_CIRCUITS_HPP
#define QAEKIT_CIRCUITS_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qaekit/linalg.hpp"
#include "qaekit/random.hpp"

namespace qaekit {

enum class GateKind { RY, RZ, CZ };

// One gate in a parameterized circuit. Rotation gates reference one entry of
// the parameter vector; CZ carries a control instead.
struct GateSpec {
    GateKind kind;
    int target = 0;
    std::optional<int> control;     // CZ only
    std::optional<int> param_index; // RY/RZ only
};

// Layered parameterized circuit over a flat parameter vector (radians).
// Rotation conventions are half-angle and phase-symmetric:
//   RZ(t) = exp(-i t Z / 2),  RY(t) = exp(-i t Y / 2),
// so RZ(0) = RY(0) = I exactly and the two-point shift rule at +-pi/2 is
// exact for every parameter.
class ParamCircuit {
  public:
    ParamCircuit(int num_qubits, int layers, std::vector<GateSpec> gates,
                 RealVector params);

    int num_qubits() const { return num_qubits_; }
    int layers() const { return layers_; }
    const std::vector<GateSpec>& gates() const { return gates_; }
    const RealVector& params() const { return params_; }
    int param_count() const { return static_cast<int>(params_.size()); }

    ParamCircuit with_params(RealVector params) const;
    ParamCircuit with_shifted_param(int index, double delta) const;

    /// Apply the circuit to a state vector in place using 2x2 / phase-flip
    /// kernels (no full 2^N x 2^N matrices).
    void apply(ComplexVector& state) const;
    /// Apply the adjoint circuit (reversed gates, negated angles) in place.
    void apply_adjoint(ComplexVector& state) const;
    /// Apply U . U^dag to a density matrix in place, kernel path.
    void apply_to_density(ComplexMatrix& rho) const;

  private:
    int num_qubits_;
    int layers_;
    std::vector<GateSpec> gates_;
    RealVector params_;
};

/// Layered ansatz: per layer RZ-RY-RZ on every qubit followed by CZ on each
/// adjacent pair; 3*N*L parameters total, initialized to zero.
ParamCircuit build_hardware_efficient(int num_qubits, int layers);

/// Same ansatz with parameters drawn uniformly from [0, 2*pi).
ParamCircuit build_hardware_efficient(int num_qubits, int layers, Rng& rng);

/// Full 2^N x 2^N matrix of the circuit, composed from dense one- and
/// two-qubit embeddings (the reference path the kernels are checked against).
ComplexMatrix unitary(const ParamCircuit& circ);

/// U rho U^dag.
DensityOperator evolve(const ParamCircuit& circ, const DensityOperator& rho);

/// Two-point parameter-shift derivative of a scalar function of the
/// parameter vector: [f(theta_i + pi/2) - f(theta_i - pi/2)] / 2.
double param_shift_gradient(
    const std::function<double(const RealVector&)>& scalar_fn,
    const ParamCircuit& circ, int index);

/// Parameter-shift derivative of the evolved density matrix,
/// d(U rho U^dag)/d(theta_i); the result is traceless Hermitian.
ComplexMatrix density_param_shift(const ParamCircuit& circ,
                                  const DensityOperator& input, int index);

/// Text serialization; parameters round-trip bit-exactly (hex floats).
void save_circuit(const ParamCircuit& circ, std::ostream& out);
ParamCircuit load_circuit(std::istream& in);

} // namespace qaekit

#endif
