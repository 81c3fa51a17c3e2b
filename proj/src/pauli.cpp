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

#include "qaekit/pauli.hpp"

#include <cctype>
#include <sstream>

namespace qaekit {

namespace {

// 2x2 Pauli action on a basis bit: returns (new_bit, phase).
struct PauliAction {
    int bit;
    cxd phase;
};

PauliAction apply_pauli(char p, int bit) {
    switch (p) {
        case 'I': return {bit, 1.0};
        case 'X': return {1 - bit, 1.0};
        case 'Y': return {1 - bit, bit == 0 ? cxd(0.0, 1.0) : cxd(0.0, -1.0)};
        case 'Z': return {bit, bit == 0 ? 1.0 : -1.0};
    }
    raise(ErrorCode::Parse, std::string("unknown Pauli character '") + p + "'");
}

} // namespace

PauliHamiltonian::PauliHamiltonian(int num_qubits, std::vector<Term> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
    if (num_qubits_ < 1) {
        raise(ErrorCode::InvalidArgument,
              "PauliHamiltonian: need at least 1 qubit");
    }
    for (const Term& t : terms_) {
        if (static_cast<int>(t.paulis.size()) != num_qubits_) {
            std::ostringstream msg;
            msg << "PauliHamiltonian: string '" << t.paulis << "' has length "
                << t.paulis.size() << ", expected " << num_qubits_;
            raise(ErrorCode::InvalidArgument, msg.str());
        }
        for (char c : t.paulis) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                std::ostringstream msg;
                msg << "PauliHamiltonian: bad Pauli character '" << c << "' in '"
                    << t.paulis << "'";
                raise(ErrorCode::InvalidArgument, msg.str());
            }
        }
    }
}

ComplexMatrix PauliHamiltonian::matrix() const {
    const std::int64_t dim = dim_for_qubits(num_qubits_);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (const Term& t : terms_) {
        // Pauli strings map each basis column to exactly one row.
        for (std::int64_t col = 0; col < dim; ++col) {
            std::int64_t row = 0;
            cxd phase = t.coefficient;
            for (int q = 0; q < num_qubits_; ++q) {
                const int shift = num_qubits_ - 1 - q;
                const int bit = static_cast<int>((col >> shift) & 1);
                const PauliAction act = apply_pauli(t.paulis[q], bit);
                row |= std::int64_t{act.bit} << shift;
                phase *= act.phase;
            }
            h(row, col) += phase;
        }
    }
    return h;
}

PauliHamiltonian PauliHamiltonian::parse(const std::string& text,
                                         int num_qubits) {
    std::vector<Term> terms;
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        std::string stripped;
        for (char c : line) {
            if (c == '#') break;
            stripped.push_back(c);
        }
        std::istringstream fields(stripped);
        double coefficient = 0.0;
        std::string paulis;
        if (!(fields >> coefficient)) {
            if (stripped.find_first_not_of(" \t\r") == std::string::npos) {
                continue; // blank or comment-only line
            }
            std::ostringstream msg;
            msg << "hamiltonian line " << line_no << ": expected a coefficient";
            raise(ErrorCode::Parse, msg.str());
        }
        if (!(fields >> paulis)) {
            std::ostringstream msg;
            msg << "hamiltonian line " << line_no << ": missing Pauli string";
            raise(ErrorCode::Parse, msg.str());
        }
        std::string extra;
        if (fields >> extra) {
            std::ostringstream msg;
            msg << "hamiltonian line " << line_no << ": trailing token '" << extra
                << "'";
            raise(ErrorCode::Parse, msg.str());
        }
        terms.push_back({coefficient, paulis});
    }
    if (terms.empty()) {
        raise(ErrorCode::Parse, "hamiltonian: no terms found");
    }
    return PauliHamiltonian(num_qubits, std::move(terms));
}

std::string PauliHamiltonian::to_text() const {
    std::ostringstream out;
    out.precision(17);
    for (const Term& t : terms_) {
        out << t.coefficient << " " << t.paulis << "\n";
    }
    return out.str();
}

PauliHamiltonian PauliHamiltonian::ising_chain(int sites) {
    if (sites < 2) {
        raise(ErrorCode::InvalidArgument, "ising_chain: need at least 2 sites");
    }
    std::vector<Term> terms;
    for (int i = 0; i < sites; ++i) {
        std::string paulis(sites, 'I');
        paulis[i] = 'Z';
        paulis[(i + 1) % sites] = 'Z';
        terms.push_back({-1.0, paulis});
    }
    return PauliHamiltonian(sites, std::move(terms));
}

PauliHamiltonian PauliHamiltonian::z_sum(int num_qubits, int terms) {
    if (terms < 1 || terms > num_qubits) {
        raise(ErrorCode::InvalidArgument, "z_sum: term count out of range");
    }
    std::vector<Term> list;
    for (int i = 0; i < terms; ++i) {
        std::string paulis(num_qubits, 'I');
        paulis[i] = 'Z';
        list.push_back({1.0, paulis});
    }
    return PauliHamiltonian(num_qubits, std::move(list));
}

} // namespace qaekit
