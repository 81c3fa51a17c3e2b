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

#ifndef QAEKIT_PAULI_HPP
#define QAEKIT_PAULI_HPP

#include <string>
#include <vector>

#include "qaekit/linalg.hpp"

namespace qaekit {

// Real linear combination of Pauli strings; Hermitian by construction.
// The text form is one term per line, "coefficient pauli-string", e.g.
//   -1.0 ZZI
// where character q of the string acts on qubit q (qubit 0 = leftmost).
class PauliHamiltonian {
  public:
    struct Term {
        double coefficient;
        std::string paulis; // length num_qubits, characters I/X/Y/Z
    };

    PauliHamiltonian(int num_qubits, std::vector<Term> terms);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Term>& terms() const { return terms_; }

    ComplexMatrix matrix() const;

    static PauliHamiltonian parse(const std::string& text, int num_qubits);
    std::string to_text() const;

    /// Periodic Ising chain -sum_i Z_i Z_{i+1} on `sites` qubits.
    static PauliHamiltonian ising_chain(int sites);
    /// sum of Z on the first `terms` qubits of an n-qubit register.
    static PauliHamiltonian z_sum(int num_qubits, int terms);

  private:
    int num_qubits_;
    std::vector<Term> terms_;
};

} // namespace qaekit

#endif
