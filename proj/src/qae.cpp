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

#include "qaekit/qae.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qaekit {

namespace {

// Rank-revealing eigenpair list of rho; the loss of an encoder is
//   1 - sum_m w_m ||P0 U v_m||^2
// with P0 the kept-sector projector, so evolving only the significant
// eigenvectors is exact and much cheaper than conjugating the full matrix.
struct WeightedEnsemble {
    std::vector<double> weights;
    std::vector<ComplexVector> vectors;
};

WeightedEnsemble decompose_state(const DensityOperator& rho) {
    SpectralDecomposition eig = eig_hermitian(rho.matrix());
    WeightedEnsemble ensemble;
    for (std::int64_t i = 0; i < eig.dim(); ++i) {
        const double w = eig.eigenvalues()(i);
        if (w > 1e-14) {
            ensemble.weights.push_back(w);
            ensemble.vectors.push_back(eig.eigenvector(i));
        }
    }
    return ensemble;
}

double kept_weight(const ParamCircuit& circ, const WeightedEnsemble& ensemble,
                   int latent_qubits) {
    const std::int64_t kept = std::int64_t{1} << latent_qubits;
    double total = 0.0;
    ComplexVector work;
    for (std::size_t m = 0; m < ensemble.vectors.size(); ++m) {
        work = ensemble.vectors[m];
        circ.apply(work);
        total += ensemble.weights[m] * work.head(kept).squaredNorm();
    }
    return total;
}

double ensemble_loss(const ParamCircuit& circ, const WeightedEnsemble& ensemble,
                     int latent_qubits) {
    const double loss = 1.0 - kept_weight(circ, ensemble, latent_qubits);
    return std::min(1.0, std::max(0.0, loss));
}

std::string format_hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hex_double(std::istream& in, const char* what) {
    std::string literal;
    if (!(in >> literal)) {
        raise(ErrorCode::Parse, std::string("model file: truncated ") + what);
    }
    char* end = nullptr;
    const double v = std::strtod(literal.c_str(), &end);
    if (end == literal.c_str() || *end != '\0') {
        raise(ErrorCode::Parse, "model file: bad float literal '" + literal + "'");
    }
    return v;
}

} // namespace

void QaeConfig::validate() const {
    if (num_qubits < 2) {
        raise(ErrorCode::InvalidArgument, "QaeConfig: need at least 2 qubits");
    }
    if (latent_qubits < 1 || latent_qubits >= num_qubits) {
        raise(ErrorCode::InvalidArgument,
              "QaeConfig: latent_qubits must satisfy 1 <= K < N");
    }
    if (layers < 1) {
        raise(ErrorCode::InvalidArgument, "QaeConfig: layers must be >= 1");
    }
    if (learning_rate <= 0.0) {
        raise(ErrorCode::InvalidArgument,
              "QaeConfig: learning_rate must be positive");
    }
    if (iterations < 0) {
        raise(ErrorCode::InvalidArgument, "QaeConfig: iterations must be >= 0");
    }
}

ComplexMatrix projector_mg(int num_qubits, int latent_qubits) {
    if (latent_qubits < 1 || latent_qubits >= num_qubits) {
        raise(ErrorCode::InvalidArgument,
              "projector_mg: latent_qubits must satisfy 1 <= K < N");
    }
    const std::int64_t dim = dim_for_qubits(num_qubits);
    const std::int64_t kept = std::int64_t{1} << latent_qubits;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::int64_t i = kept; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

double qae_loss(const ParamCircuit& circ, const DensityOperator& rho,
                int latent_qubits) {
    if (circ.num_qubits() != rho.num_qubits()) {
        raise(ErrorCode::DimensionMismatch,
              "qae_loss: circuit and state qubit counts differ");
    }
    if (latent_qubits < 1 || latent_qubits >= rho.num_qubits()) {
        raise(ErrorCode::InvalidArgument,
              "qae_loss: latent_qubits must satisfy 1 <= K < N");
    }
    return ensemble_loss(circ, decompose_state(rho), latent_qubits);
}

QaeModel train(const DensityOperator& rho, const QaeConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const ParamCircuit init =
        build_hardware_efficient(config.num_qubits, config.layers, rng);
    return train_from(rho, config, init.params());
}

QaeModel train_from(const DensityOperator& rho, const QaeConfig& config,
                    const RealVector& initial_params) {
    config.validate();
    if (rho.num_qubits() != config.num_qubits) {
        raise(ErrorCode::DimensionMismatch,
              "train: state does not match config.num_qubits");
    }
    ParamCircuit circ =
        build_hardware_efficient(config.num_qubits, config.layers)
            .with_params(initial_params);
    const WeightedEnsemble ensemble = decompose_state(rho);
    const int k = config.latent_qubits;

    std::vector<double> trace;
    trace.reserve(config.iterations + 1);
    trace.push_back(ensemble_loss(circ, ensemble, k));

    RealVector params = circ.params();
    RealVector grad(params.size());
    for (int t = 0; t < config.iterations; ++t) {
        for (int i = 0; i < params.size(); ++i) {
            const double saved = params(i);
            params(i) = saved + M_PI / 2.0;
            const double plus = ensemble_loss(circ.with_params(params), ensemble, k);
            params(i) = saved - M_PI / 2.0;
            const double minus = ensemble_loss(circ.with_params(params), ensemble, k);
            params(i) = saved;
            grad(i) = (plus - minus) / 2.0;
        }
        params -= config.learning_rate * grad;
        circ = circ.with_params(params);
        trace.push_back(ensemble_loss(circ, ensemble, k));
    }

    QaeModel model{config, circ, trace.back(), std::move(trace)};
    return model;
}

CompressedState compress(const QaeModel& model, const DensityOperator& rho) {
    const int n = model.config.num_qubits;
    const int k = model.config.latent_qubits;
    if (rho.num_qubits() != n) {
        raise(ErrorCode::DimensionMismatch,
              "compress: state does not match the trained model");
    }
    // Kept-sector block of U rho U^dag: entries <chi_a| rho |chi_b> with
    // chi_a = U^dag |0...0, a>.
    const std::int64_t kept = std::int64_t{1} << k;
    const std::int64_t dim = dim_for_qubits(n);
    std::vector<ComplexVector> frame(kept);
    for (std::int64_t a = 0; a < kept; ++a) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(a) = 1.0;
        model.circuit.apply_adjoint(v);
        frame[a] = std::move(v);
    }
    std::vector<ComplexVector> rho_frame(kept);
    for (std::int64_t b = 0; b < kept; ++b) {
        rho_frame[b] = rho.matrix() * frame[b];
    }
    ComplexMatrix block(kept, kept);
    for (std::int64_t a = 0; a < kept; ++a) {
        for (std::int64_t b = 0; b < kept; ++b) {
            block(a, b) = frame[a].dot(rho_frame[b]);
        }
    }
    block = ((block + block.adjoint()) / 2.0).eval();
    const double success = block.trace().real();
    if (success < tol.degenerate_success) {
        std::ostringstream msg;
        msg << "compress: encoder maps the state outside the kept subspace "
               "(success probability "
            << success << ")";
        raise(ErrorCode::DegenerateCompression, msg.str());
    }
    block /= success;
    return CompressedState{k, DensityOperator(k, std::move(block)), success};
}

SpectralReadout spectral_readout(const QaeModel& model,
                                 const CompressedState& compressed) {
    const int n = model.config.num_qubits;
    const int k = model.config.latent_qubits;
    if (compressed.latent_qubits != k) {
        raise(ErrorCode::DimensionMismatch,
              "spectral_readout: compressed state does not match the model");
    }
    SpectralDecomposition latent = eig_hermitian(compressed.state.matrix());
    const std::int64_t kept = std::int64_t{1} << k;
    const std::int64_t dim = dim_for_qubits(n);
    std::vector<PureState> reconstructed;
    reconstructed.reserve(kept);
    for (std::int64_t i = 0; i < kept; ++i) {
        // Embed |w_i> into the kept sector (leading trash qubits |0>) and pull
        // it back through the encoder.
        ComplexVector v = ComplexVector::Zero(dim);
        v.head(kept) = latent.eigenvector(i);
        model.circuit.apply_adjoint(v);
        v.normalize();
        reconstructed.emplace_back(n, std::move(v));
    }
    return SpectralReadout{std::move(latent), std::move(reconstructed)};
}

DensityOperator reconstructed_state(const QaeModel& model,
                                    const SpectralReadout& readout) {
    const int n = model.config.num_qubits;
    const std::int64_t dim = dim_for_qubits(n);
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < readout.reconstructed.size(); ++i) {
        const ComplexVector& phi = readout.reconstructed[i].amplitudes();
        m += readout.latent.eigenvalues()(static_cast<std::int64_t>(i)) *
             (phi * phi.adjoint());
    }
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(n, std::move(m));
}

void save_model(const QaeModel& model, std::ostream& out) {
    out << "qaekit-qae-model 1\n";
    out << "num_qubits " << model.config.num_qubits << "\n";
    out << "latent_qubits " << model.config.latent_qubits << "\n";
    out << "layers " << model.config.layers << "\n";
    out << "learning_rate " << format_hex_double(model.config.learning_rate)
        << "\n";
    out << "iterations " << model.config.iterations << "\n";
    out << "seed " << model.config.seed << "\n";
    out << "final_loss " << format_hex_double(model.final_loss) << "\n";
    out << "loss_trace " << model.loss_trace.size() << "\n";
    for (double v : model.loss_trace) {
        out << format_hex_double(v) << "\n";
    }
    save_circuit(model.circuit, out);
}

QaeModel load_model(std::istream& in) {
    auto expect_word = [&](const char* word) {
        std::string got;
        if (!(in >> got) || got != word) {
            raise(ErrorCode::Parse,
                  std::string("model file: expected '") + word + "', got '" +
                      got + "'");
        }
    };
    expect_word("qaekit-qae-model");
    int version = 0;
    in >> version;
    if (version != 1) {
        raise(ErrorCode::Parse, "model file: unsupported version");
    }
    QaeConfig config;
    expect_word("num_qubits");
    in >> config.num_qubits;
    expect_word("latent_qubits");
    in >> config.latent_qubits;
    expect_word("layers");
    in >> config.layers;
    expect_word("learning_rate");
    config.learning_rate = parse_hex_double(in, "learning_rate");
    expect_word("iterations");
    in >> config.iterations;
    expect_word("seed");
    in >> config.seed;
    expect_word("final_loss");
    const double final_loss = parse_hex_double(in, "final_loss");
    expect_word("loss_trace");
    std::size_t trace_len = 0;
    in >> trace_len;
    std::vector<double> trace(trace_len);
    for (std::size_t i = 0; i < trace_len; ++i) {
        trace[i] = parse_hex_double(in, "loss_trace");
    }
    ParamCircuit circ = load_circuit(in);
    return QaeModel{config, std::move(circ), final_loss, std::move(trace)};
}

void save_model_file(const QaeModel& model, const std::string& path) {
    const std::filesystem::path target(path);
    if (!target.parent_path().empty()) {
        std::error_code ec;
        std::filesystem::create_directories(target.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        raise(ErrorCode::Io, "save_model_file: cannot open " + path);
    }
    save_model(model, out);
    if (!out.good()) {
        raise(ErrorCode::Io, "save_model_file: write failed for " + path);
    }
}

QaeModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::Io, "load_model_file: cannot open " + path);
    }
    return load_model(in);
}

} // namespace qaekit
