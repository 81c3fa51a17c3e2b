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

#include "qaekit/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace qaekit {

namespace {

constexpr double kHalfPi = M_PI / 2.0;

Eigen::Matrix2cd ry_matrix(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::exp(cxd(0.0, -theta / 2.0));
    m(1, 1) = std::exp(cxd(0.0, theta / 2.0));
    return m;
}

// Applies a 2x2 gate on `target` to a state vector; qubit 0 is the most
// significant bit of the index.
void apply_single(ComplexVector& state, int num_qubits, int target,
                  const Eigen::Matrix2cd& g) {
    const std::int64_t dim = state.size();
    const std::int64_t stride = std::int64_t{1} << (num_qubits - 1 - target);
    for (std::int64_t base = 0; base < dim; base += 2 * stride) {
        for (std::int64_t off = 0; off < stride; ++off) {
            const std::int64_t i0 = base + off;
            const std::int64_t i1 = i0 + stride;
            const cxd a = state(i0);
            const cxd b = state(i1);
            state(i0) = g(0, 0) * a + g(0, 1) * b;
            state(i1) = g(1, 0) * a + g(1, 1) * b;
        }
    }
}

void apply_cz(ComplexVector& state, int num_qubits, int control, int target) {
    const std::int64_t dim = state.size();
    const std::int64_t mask =
        (std::int64_t{1} << (num_qubits - 1 - control)) |
        (std::int64_t{1} << (num_qubits - 1 - target));
    for (std::int64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) state(i) = -state(i);
    }
}

void apply_gate(ComplexVector& state, int num_qubits, const GateSpec& gate,
                const RealVector& params, bool adjoint) {
    switch (gate.kind) {
        case GateKind::RY: {
            double t = params(*gate.param_index);
            apply_single(state, num_qubits, gate.target,
                         ry_matrix(adjoint ? -t : t));
            break;
        }
        case GateKind::RZ: {
            double t = params(*gate.param_index);
            apply_single(state, num_qubits, gate.target,
                         rz_matrix(adjoint ? -t : t));
            break;
        }
        case GateKind::CZ:
            apply_cz(state, num_qubits, *gate.control, gate.target);
            break;
    }
}

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CZ: return "cz";
    }
    return "?";
}

std::string format_hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hex_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        raise(ErrorCode::Parse, "circuit file: bad float literal '" + s + "'");
    }
    return v;
}

} // namespace

ParamCircuit::ParamCircuit(int num_qubits, int layers,
                           std::vector<GateSpec> gates, RealVector params)
    : num_qubits_(num_qubits), layers_(layers), gates_(std::move(gates)),
      params_(std::move(params)) {
    if (num_qubits_ < 1) {
        raise(ErrorCode::InvalidArgument, "ParamCircuit: need at least 1 qubit");
    }
    std::vector<int> uses(params_.size(), 0);
    for (const GateSpec& g : gates_) {
        if (g.target < 0 || g.target >= num_qubits_) {
            raise(ErrorCode::InvalidArgument, "ParamCircuit: target out of range");
        }
        if (g.kind == GateKind::CZ) {
            if (!g.control || g.param_index) {
                raise(ErrorCode::InvalidArgument,
                      "ParamCircuit: CZ needs a control and takes no parameter");
            }
            if (*g.control == g.target || *g.control < 0 ||
                *g.control >= num_qubits_) {
                raise(ErrorCode::InvalidArgument,
                      "ParamCircuit: bad CZ control qubit");
            }
        } else {
            if (g.control || !g.param_index) {
                raise(ErrorCode::InvalidArgument,
                      "ParamCircuit: rotation gates take a parameter and no control");
            }
            if (*g.param_index < 0 ||
                *g.param_index >= static_cast<int>(params_.size())) {
                raise(ErrorCode::InvalidArgument,
                      "ParamCircuit: parameter index out of range");
            }
            ++uses[*g.param_index];
        }
    }
    for (std::size_t i = 0; i < uses.size(); ++i) {
        if (uses[i] != 1) {
            std::ostringstream msg;
            msg << "ParamCircuit: parameter " << i << " referenced " << uses[i]
                << " times (want exactly 1)";
            raise(ErrorCode::InvalidArgument, msg.str());
        }
    }
}

ParamCircuit ParamCircuit::with_params(RealVector params) const {
    if (params.size() != params_.size()) {
        raise(ErrorCode::InvalidArgument,
              "ParamCircuit::with_params: wrong parameter count");
    }
    return ParamCircuit(num_qubits_, layers_, gates_, std::move(params));
}

ParamCircuit ParamCircuit::with_shifted_param(int index, double delta) const {
    if (index < 0 || index >= param_count()) {
        raise(ErrorCode::InvalidArgument,
              "ParamCircuit::with_shifted_param: index out of range");
    }
    RealVector p = params_;
    p(index) += delta;
    return with_params(std::move(p));
}

void ParamCircuit::apply(ComplexVector& state) const {
    if (state.size() != dim_for_qubits(num_qubits_)) {
        raise(ErrorCode::DimensionMismatch, "ParamCircuit::apply: bad state size");
    }
    for (const GateSpec& g : gates_) {
        apply_gate(state, num_qubits_, g, params_, false);
    }
}

void ParamCircuit::apply_adjoint(ComplexVector& state) const {
    if (state.size() != dim_for_qubits(num_qubits_)) {
        raise(ErrorCode::DimensionMismatch,
              "ParamCircuit::apply_adjoint: bad state size");
    }
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        apply_gate(state, num_qubits_, *it, params_, true);
    }
}

void ParamCircuit::apply_to_density(ComplexMatrix& rho) const {
    const std::int64_t dim = dim_for_qubits(num_qubits_);
    if (rho.rows() != dim || rho.cols() != dim) {
        raise(ErrorCode::DimensionMismatch,
              "ParamCircuit::apply_to_density: bad matrix size");
    }
    // U rho U^dag column by column, then row by row through the adjoint:
    // (U rho) columns are vector applies; (X U^dag) rows are conjugated
    // vector applies of the rows of X.
    ComplexVector work(dim);
    for (std::int64_t c = 0; c < dim; ++c) {
        work = rho.col(c);
        apply(work);
        rho.col(c) = work;
    }
    for (std::int64_t r = 0; r < dim; ++r) {
        work = rho.row(r).conjugate().transpose();
        apply(work);
        rho.row(r) = work.conjugate().transpose();
    }
}

ParamCircuit build_hardware_efficient(int num_qubits, int layers) {
    if (num_qubits < 1 || layers < 1) {
        raise(ErrorCode::InvalidArgument,
              "build_hardware_efficient: need num_qubits >= 1 and layers >= 1");
    }
    std::vector<GateSpec> gates;
    int p = 0;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < num_qubits; ++q) {
            gates.push_back({GateKind::RZ, q, std::nullopt, p++});
            gates.push_back({GateKind::RY, q, std::nullopt, p++});
            gates.push_back({GateKind::RZ, q, std::nullopt, p++});
        }
        for (int q = 0; q + 1 < num_qubits; ++q) {
            gates.push_back({GateKind::CZ, q + 1, q, std::nullopt});
        }
    }
    return ParamCircuit(num_qubits, layers, std::move(gates),
                        RealVector::Zero(p));
}

ParamCircuit build_hardware_efficient(int num_qubits, int layers, Rng& rng) {
    ParamCircuit circ = build_hardware_efficient(num_qubits, layers);
    RealVector params(circ.param_count());
    for (int i = 0; i < circ.param_count(); ++i) {
        params(i) = rng.uniform(0.0, 2.0 * M_PI);
    }
    return circ.with_params(std::move(params));
}

ComplexMatrix unitary(const ParamCircuit& circ) {
    const std::int64_t dim = dim_for_qubits(circ.num_qubits());
    const int n = circ.num_qubits();
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const GateSpec& g : circ.gates()) {
        ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
        if (g.kind == GateKind::CZ) {
            const std::int64_t mask =
                (std::int64_t{1} << (n - 1 - *g.control)) |
                (std::int64_t{1} << (n - 1 - g.target));
            for (std::int64_t i = 0; i < dim; ++i) {
                full(i, i) = ((i & mask) == mask) ? -1.0 : 1.0;
            }
        } else {
            const Eigen::Matrix2cd m =
                g.kind == GateKind::RY ? ry_matrix(circ.params()(*g.param_index))
                                       : rz_matrix(circ.params()(*g.param_index));
            const std::int64_t bit = std::int64_t{1} << (n - 1 - g.target);
            for (std::int64_t i = 0; i < dim; ++i) {
                const int bi = (i & bit) ? 1 : 0;
                full(i, i ^ bit) = m(bi, 1 - bi);
                full(i, i) = m(bi, bi);
            }
        }
        u = (full * u).eval(); // later gates multiply on the left
    }
    return u;
}

DensityOperator evolve(const ParamCircuit& circ, const DensityOperator& rho) {
    if (circ.num_qubits() != rho.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "evolve: circuit and state qubit counts differ");
    }
    ComplexMatrix m = rho.matrix();
    circ.apply_to_density(m);
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(rho.num_qubits(), std::move(m));
}

double param_shift_gradient(
    const std::function<double(const RealVector&)>& scalar_fn,
    const ParamCircuit& circ, int index) {
    if (index < 0 || index >= circ.param_count()) {
        raise(ErrorCode::InvalidArgument,
              "param_shift_gradient: index out of range");
    }
    RealVector plus = circ.params();
    RealVector minus = circ.params();
    plus(index) += kHalfPi;
    minus(index) -= kHalfPi;
    return (scalar_fn(plus) - scalar_fn(minus)) / 2.0;
}

ComplexMatrix density_param_shift(const ParamCircuit& circ,
                                  const DensityOperator& input, int index) {
    if (index < 0 || index >= circ.param_count()) {
        raise(ErrorCode::InvalidArgument,
              "density_param_shift: index out of range");
    }
    if (circ.num_qubits() != input.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "density_param_shift: circuit and state qubit counts differ");
    }
    ComplexMatrix plus = input.matrix();
    circ.with_shifted_param(index, kHalfPi).apply_to_density(plus);
    ComplexMatrix minus = input.matrix();
    circ.with_shifted_param(index, -kHalfPi).apply_to_density(minus);
    ComplexMatrix out = (plus - minus) / 2.0;
    return ((out + out.adjoint()) / 2.0).eval();
}

void save_circuit(const ParamCircuit& circ, std::ostream& out) {
    out << "qaekit-circuit 1\n";
    out << "qubits " << circ.num_qubits() << "\n";
    out << "layers " << circ.layers() << "\n";
    out << "gates " << circ.gates().size() << "\n";
    for (const GateSpec& g : circ.gates()) {
        out << kind_name(g.kind) << " " << g.target;
        if (g.kind == GateKind::CZ) {
            out << " c" << *g.control;
        } else {
            out << " p" << *g.param_index;
        }
        out << "\n";
    }
    out << "params " << circ.param_count() << "\n";
    for (int i = 0; i < circ.param_count(); ++i) {
        out << format_hex_double(circ.params()(i)) << "\n";
    }
}

ParamCircuit load_circuit(std::istream& in) {
    auto expect_word = [&](const char* word) {
        std::string got;
        if (!(in >> got) || got != word) {
            raise(ErrorCode::Parse,
                  std::string("circuit file: expected '") + word + "', got '" +
                      got + "'");
        }
    };
    expect_word("qaekit-circuit");
    int version = 0;
    in >> version;
    if (version != 1) {
        raise(ErrorCode::Parse, "circuit file: unsupported version");
    }
    expect_word("qubits");
    int num_qubits = 0;
    in >> num_qubits;
    expect_word("layers");
    int layers = 0;
    in >> layers;
    expect_word("gates");
    std::size_t gate_count = 0;
    in >> gate_count;
    std::vector<GateSpec> gates;
    gates.reserve(gate_count);
    for (std::size_t i = 0; i < gate_count; ++i) {
        std::string kind, arg;
        int target = 0;
        if (!(in >> kind >> target >> arg)) {
            raise(ErrorCode::Parse, "circuit file: truncated gate list");
        }
        GateSpec g;
        g.target = target;
        if (kind == "ry") {
            g.kind = GateKind::RY;
        } else if (kind == "rz") {
            g.kind = GateKind::RZ;
        } else if (kind == "cz") {
            g.kind = GateKind::CZ;
        } else {
            raise(ErrorCode::Parse, "circuit file: unknown gate '" + kind + "'");
        }
        if (arg.size() < 2 || (arg[0] != 'p' && arg[0] != 'c')) {
            raise(ErrorCode::Parse, "circuit file: bad gate argument '" + arg + "'");
        }
        const int value = std::stoi(arg.substr(1));
        if (arg[0] == 'c') {
            g.control = value;
        } else {
            g.param_index = value;
        }
        gates.push_back(g);
    }
    expect_word("params");
    int param_count = 0;
    in >> param_count;
    RealVector params(param_count);
    for (int i = 0; i < param_count; ++i) {
        std::string literal;
        if (!(in >> literal)) {
            raise(ErrorCode::Parse, "circuit file: truncated parameter list");
        }
        params(i) = parse_hex_double(literal);
    }
    return ParamCircuit(num_qubits, layers, std::move(gates), std::move(params));
}

} // namespace qaekit
