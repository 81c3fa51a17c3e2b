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

#include "qaekit/random.hpp"

#include <cmath>

namespace qaekit {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

PureState random_pure_state(int num_qubits, Rng& rng) {
    const std::int64_t dim = dim_for_qubits(num_qubits);
    ComplexVector v(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        v(i) = rng.complex_gaussian();
    }
    v.normalize();
    return PureState(num_qubits, std::move(v));
}

DensityOperator random_density_operator(int num_qubits, int rank, Rng& rng) {
    const std::int64_t dim = dim_for_qubits(num_qubits);
    if (rank < 1 || rank > dim) {
        raise(ErrorCode::InvalidArgument,
              "random_density_operator: rank out of range");
    }
    ComplexMatrix g(dim, rank);
    for (std::int64_t i = 0; i < dim; ++i) {
        for (int j = 0; j < rank; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(num_qubits, std::move(m));
}

ComplexMatrix random_hermitian(std::int64_t dim, Rng& rng) {
    ComplexMatrix a(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        for (std::int64_t j = 0; j < dim; ++j) {
            a(i, j) = rng.complex_gaussian();
        }
    }
    return ((a + a.adjoint()) / 2.0).eval();
}

} // namespace qaekit
