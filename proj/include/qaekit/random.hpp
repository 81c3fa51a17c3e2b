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

#ifndef QAEKIT_RANDOM_HPP
#define QAEKIT_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qaekit/linalg.hpp"

namespace qaekit {

// Seeded generator with hand-rolled uniform/gaussian transforms so that the
// numbers (and therefore every experiment record) are reproducible across
// standard libraries. mt19937_64 itself is fully specified by the standard.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian();

    /// Standard complex normal (independent N(0,1/2)-ish real/imag parts).
    cxd complex_gaussian() { return cxd(gaussian(), gaussian()); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-ish random pure state: normalized complex gaussian vector.
PureState random_pure_state(int num_qubits, Rng& rng);

/// Random density operator of the given rank (Ginibre construction).
DensityOperator random_density_operator(int num_qubits, int rank, Rng& rng);

/// Random Hermitian matrix with entries of unit scale.
ComplexMatrix random_hermitian(std::int64_t dim, Rng& rng);

} // namespace qaekit

#endif
