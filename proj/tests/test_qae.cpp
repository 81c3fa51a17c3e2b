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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qaekit/fidelity.hpp"
#include "qaekit/qae.hpp"
#include "qaekit/random.hpp"
#include "test_support.hpp"

using namespace qaekit;
using namespace qaekit::testing;

namespace {

QaeConfig small_config(int n, int k, int layers, int iterations,
                       std::uint64_t seed) {
    QaeConfig config;
    config.num_qubits = n;
    config.latent_qubits = k;
    config.layers = layers;
    config.learning_rate = 0.8;
    config.iterations = iterations;
    config.seed = seed;
    return config;
}

// Model wrapper around fixed parameters (no training).
QaeModel model_with_params(int n, int k, const ParamCircuit& circ,
                           const DensityOperator& rho) {
    QaeConfig config = small_config(n, k, circ.layers(), 0, 0);
    const double loss = qae_loss(circ, rho, k);
    return QaeModel{config, circ, loss, {loss}};
}

// State whose support is block-compatible with the encoder: rho commutes
// with the pulled-back kept-sector projector of `circ`.
DensityOperator aligned_state(const ParamCircuit& circ,
                              const RealVector& weights) {
    const std::int64_t dim = dim_for_qubits(circ.num_qubits());
    REQUIRE(weights.size() == dim);
    ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) diag(i, i) = weights(i);
    const ComplexMatrix u = unitary(circ);
    ComplexMatrix m = u.adjoint() * diag * u;
    m = ((m + m.adjoint()) / 2.0).eval();
    return DensityOperator(circ.num_qubits(), std::move(m));
}

} // namespace

TEST_CASE("projector_mg matches its direct expansion") {
    ComplexMatrix p = projector_mg(2, 1);
    CHECK(p(0, 0).real() == doctest::Approx(0.0));
    CHECK(p(1, 1).real() == doctest::Approx(0.0));
    CHECK(p(2, 2).real() == doctest::Approx(1.0));
    CHECK(p(3, 3).real() == doctest::Approx(1.0));

    ComplexMatrix p31 = projector_mg(3, 1);
    CHECK(p31.trace().real() == doctest::Approx(6.0)); // rank 2^3 - 2^1
    CHECK(max_abs(p31 * p31 - p31) == doctest::Approx(0.0));

    CHECK_THROWS_AS(projector_mg(2, 2), Error);
}

TEST_CASE("qae_loss endpoints under a population-preserving encoder") {
    // Zero-parameter ansatz: every gate is diagonal or identity, so basis
    // populations are untouched.
    ParamCircuit circ = build_hardware_efficient(3, 1);
    DensityOperator all_zero = DensityOperator::from_pure(PureState::zero(3));
    CHECK(qae_loss(circ, all_zero, 1) == doctest::Approx(0.0).epsilon(1e-12));

    // Leading (trash) qubit set to |1>: entirely outside the kept sector.
    DensityOperator outside =
        DensityOperator::from_pure(PureState::basis(3, 0b100));
    CHECK(qae_loss(circ, outside, 1) == doctest::Approx(1.0));
}

TEST_CASE("qae_loss agrees with the definitional projector trace") {
    Rng rng(70);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + trial % 3;
        const int k = 1 + trial % (n - 1);
        DensityOperator rho =
            random_density_operator(n, 1 + trial % 3, rng);
        ParamCircuit circ = random_circuit(n, 2, 700 + trial);
        const ComplexMatrix u = unitary(circ);
        const double oracle =
            (projector_mg(n, k) * u * rho.matrix() * u.adjoint())
                .trace()
                .real();
        CHECK(std::abs(qae_loss(circ, rho, k) - oracle) <= 1e-10);
        CHECK(qae_loss(circ, rho, k) >= 0.0);
        CHECK(qae_loss(circ, rho, k) <= 1.0);
    }
}

TEST_CASE("training drives compressible states to near-zero loss") {
    DensityOperator rho = build_noisy_state(
        NoisyStateSpec(PureState::zero(3), 0.1, 2, 2.0));
    QaeModel model = train(rho, small_config(3, 1, 4, 150, 3));
    CHECK_EQ(model.loss_trace.size(), 151);
    CHECK(model.final_loss < 1e-4);
    // Re-evaluation reproduces the recorded loss.
    CHECK(std::abs(qae_loss(model.circuit, rho, 1) - model.final_loss) <=
          1e-10);
}

TEST_CASE("full-rank inputs cannot beat the capacity bound") {
    DensityOperator mixed = DensityOperator::maximally_mixed(3);
    QaeModel model = train(mixed, small_config(3, 2, 2, 5, 4));
    const double floor = 1.0 - std::pow(2.0, 2) / std::pow(2.0, 3);
    CHECK(model.final_loss >= floor - 1e-8);
    // The maximally mixed state is unitarily invariant, so the loss never
    // moves at all.
    for (double loss : model.loss_trace) {
        CHECK(loss == doctest::Approx(floor).epsilon(1e-10));
    }
}

TEST_CASE("zero-iteration training returns the initial loss only") {
    Rng rng(72);
    DensityOperator rho = random_density_operator(2, 1, rng);
    QaeModel model = train(rho, small_config(2, 1, 2, 0, 5));
    CHECK_EQ(model.loss_trace.size(), 1);
    CHECK(model.final_loss == doctest::Approx(model.loss_trace[0]));
}

TEST_CASE("training is bit-reproducible for a fixed seed") {
    Rng rng(73);
    DensityOperator rho = random_density_operator(3, 2, rng);
    QaeModel a = train(rho, small_config(3, 2, 3, 20, 9));
    QaeModel b = train(rho, small_config(3, 2, 3, 20, 9));
    REQUIRE_EQ(a.loss_trace.size(), b.loss_trace.size());
    for (std::size_t i = 0; i < a.loss_trace.size(); ++i) {
        CHECK(a.loss_trace[i] == b.loss_trace[i]); // exact
    }
    QaeModel c = train(rho, small_config(3, 2, 3, 20, 10));
    CHECK(a.loss_trace.back() != c.loss_trace.back());
}

TEST_CASE("compress keeps the latent block of an identity-like encoder") {
    ParamCircuit circ = build_hardware_efficient(3, 1);
    DensityOperator rho = DensityOperator::from_pure(PureState::zero(3));
    QaeModel model = model_with_params(3, 2, circ, rho);
    CompressedState compressed = compress(model, rho);
    CHECK(compressed.success_prob == doctest::Approx(1.0));
    CHECK(max_abs(compressed.state.matrix() -
                  DensityOperator::from_pure(PureState::zero(2)).matrix()) <=
          1e-12);
}

TEST_CASE("optimal encoders recover the input spectrum exactly") {
    // Build the state from the encoder itself, so the encoder is optimal by
    // construction and the latent spectrum must equal the input spectrum.
    ParamCircuit encoder = random_circuit(3, 2, 77);
    RealVector weights = RealVector::Zero(8);
    weights(0) = 0.7;
    weights(1) = 0.3;
    DensityOperator rho = aligned_state(encoder, weights);
    QaeModel model = model_with_params(3, 1, encoder, rho);
    CHECK(model.final_loss <= 1e-10);

    CompressedState compressed = compress(model, rho);
    SpectralReadout readout = spectral_readout(model, compressed);
    CHECK(readout.latent.eigenvalues()(0) == doctest::Approx(0.7));
    CHECK(readout.latent.eigenvalues()(1) == doctest::Approx(0.3));
}

TEST_CASE("latent spectrum of a trash-sector-diagonal state") {
    // diag(0.7, 0.3) on the latent qubit with the trash qubit at |0>.
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 0.7;
    m(1, 1) = 0.3;
    DensityOperator rho(2, m);
    ParamCircuit circ = build_hardware_efficient(2, 1);
    QaeModel model = model_with_params(2, 1, circ, rho);
    CompressedState compressed = compress(model, rho);
    SpectralReadout readout = spectral_readout(model, compressed);
    CHECK(readout.latent.eigenvalues()(0) == doctest::Approx(0.7));
    CHECK(readout.latent.eigenvalues()(1) == doctest::Approx(0.3));
}

TEST_CASE("compressed eigenvalues match the normalized-block oracle") {
    Rng rng(78);
    for (int trial = 0; trial < 6; ++trial) {
        DensityOperator rho = random_density_operator(3, 3, rng);
        ParamCircuit circ = random_circuit(3, 2, 780 + trial);
        QaeModel model = model_with_params(3, 2, circ, rho);
        CompressedState compressed = compress(model, rho);

        // Definitional oracle through dense matrices.
        const ComplexMatrix u = unitary(circ);
        ComplexMatrix out = u * rho.matrix() * u.adjoint();
        ComplexMatrix block = out.topLeftCorner(4, 4);
        block = ((block + block.adjoint()) / 2.0).eval();
        const double success = block.trace().real();
        CHECK(std::abs(compressed.success_prob - success) <= 1e-12);
        CHECK(std::abs(compressed.success_prob -
                       (1.0 - model.final_loss)) <= 1e-10);

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block / success);
        RealVector expected = solver.eigenvalues().reverse();
        RealVector got = eig_hermitian(compressed.state.matrix()).eigenvalues();
        CHECK((expected - got).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("compress raises on a fully escaped state") {
    // Trash qubit pinned to |1> under a population-preserving encoder: the
    // kept sector carries exactly zero weight.
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(2, 2) = 0.5;
    m(3, 3) = 0.5;
    DensityOperator rho(2, m);
    ParamCircuit circ = build_hardware_efficient(2, 1);
    QaeModel model = model_with_params(2, 1, circ, rho);
    CHECK_THROWS_AS(compress(model, rho), Error);
    try {
        compress(model, rho);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateCompression);
    }
}

TEST_CASE("readout frames are orthonormal") {
    Rng rng(79);
    DensityOperator rho = random_density_operator(3, 4, rng);
    ParamCircuit circ = random_circuit(3, 2, 790);
    QaeModel model = model_with_params(3, 2, circ, rho);
    SpectralReadout readout = spectral_readout(model, compress(model, rho));
    const std::size_t r = readout.reconstructed.size();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const cxd overlap = readout.reconstructed[i].amplitudes().dot(
                readout.reconstructed[j].amplitudes());
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(overlap - expected) <= tol.orthonormality);
        }
    }
}

TEST_CASE("optimal readout spans the support of the input") {
    ParamCircuit encoder = random_circuit(3, 2, 80);
    RealVector weights = RealVector::Zero(8);
    weights(0) = 0.6;
    weights(1) = 0.4;
    DensityOperator rho = aligned_state(encoder, weights);
    QaeModel model = model_with_params(3, 1, encoder, rho);
    SpectralReadout readout = spectral_readout(model, compress(model, rho));

    // Projector onto the readout frame preserves each input eigenvector.
    ComplexMatrix projector = ComplexMatrix::Zero(8, 8);
    for (const PureState& phi : readout.reconstructed) {
        projector += phi.amplitudes() * phi.amplitudes().adjoint();
    }
    SpectralDecomposition input_eig = eig_hermitian(rho.matrix());
    for (int i = 0; i < 2; ++i) {
        const ComplexVector v = input_eig.eigenvector(i);
        CHECK((projector * v).norm() == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("reconstruction is exact at zero loss and pure at rank one") {
    ParamCircuit encoder = random_circuit(3, 2, 81);
    RealVector weights = RealVector::Zero(8);
    weights(0) = 0.55;
    weights(1) = 0.45;
    DensityOperator rho = aligned_state(encoder, weights);
    QaeModel model = model_with_params(3, 1, encoder, rho);
    SpectralReadout readout = spectral_readout(model, compress(model, rho));
    DensityOperator rho_hat = reconstructed_state(model, readout);
    CHECK(max_abs(rho_hat.matrix() - rho.matrix()) <= 1e-6);

    RealVector pure_weights = RealVector::Zero(8);
    pure_weights(0) = 1.0;
    DensityOperator pure = aligned_state(encoder, pure_weights);
    QaeModel pure_model = model_with_params(3, 1, encoder, pure);
    SpectralReadout pure_readout =
        spectral_readout(pure_model, compress(pure_model, pure));
    DensityOperator pure_hat = reconstructed_state(pure_model, pure_readout);
    CHECK(pure_hat.purity() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("reconstruction residual equals twice the loss on aligned states") {
    // When the input commutes with the pulled-back kept projector, the
    // trace distance to the reconstruction is exactly twice the loss.
    for (int trial = 0; trial < 6; ++trial) {
        ParamCircuit encoder = random_circuit(3, 2, 820 + trial);
        Rng rng(90 + trial);
        RealVector weights(8);
        double norm = 0.0;
        for (int i = 0; i < 8; ++i) {
            weights(i) = rng.uniform();
            norm += weights(i);
        }
        weights /= norm;
        DensityOperator rho = aligned_state(encoder, weights);
        QaeModel model = model_with_params(3, 2, encoder, rho);
        SpectralReadout readout = spectral_readout(model, compress(model, rho));
        DensityOperator rho_hat = reconstructed_state(model, readout);
        CHECK(std::abs(trace_distance(rho_hat, rho) - 2.0 * model.final_loss) <=
              1e-10);
    }
}

TEST_CASE("reconstruction residual properties at arbitrary parameters") {
    // For generic (state, parameters) pairs the trace distance is bounded
    // below by twice the loss, and the kept-frame diagonal residual equals
    // twice the loss exactly.
    Rng rng(83);
    for (int trial = 0; trial < 8; ++trial) {
        DensityOperator rho = random_density_operator(3, 2, rng);
        ParamCircuit circ = random_circuit(3, 2, 830 + trial);
        QaeModel model = model_with_params(3, 1, circ, rho);
        SpectralReadout readout = spectral_readout(model, compress(model, rho));
        DensityOperator rho_hat = reconstructed_state(model, readout);

        CHECK(trace_distance(rho_hat, rho) >= 2.0 * model.final_loss - 1e-9);

        // Diagonal residual over the full pulled-back basis.
        const ComplexMatrix u = unitary(circ);
        const ComplexMatrix diff = rho_hat.matrix() - rho.matrix();
        double diagonal_residual = 0.0;
        for (std::int64_t a = 0; a < 8; ++a) {
            ComplexVector basis_vec = ComplexVector::Zero(8);
            basis_vec(a) = 1.0;
            const ComplexVector chi = u.adjoint() * basis_vec;
            diagonal_residual += std::abs((chi.adjoint() * diff * chi)(0, 0));
        }
        CHECK(std::abs(diagonal_residual - 2.0 * model.final_loss) <= 1e-10);
    }
}

TEST_CASE("well-trained encoders preserve the input spectrum") {
    DensityOperator rho = build_noisy_state(
        NoisyStateSpec(PureState::zero(4), 0.1, 4, 2.0));
    QaeModel model = train(rho, small_config(4, 2, 5, 200, 2));
    REQUIRE(model.final_loss <= 1e-6);
    SpectralReadout readout = spectral_readout(model, compress(model, rho));
    RealVector input = eig_hermitian(rho.matrix()).eigenvalues();
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(readout.latent.eigenvalues()(i) - input(i)) <= 1e-3);
    }
}

TEST_CASE("model serialization round-trips exactly") {
    Rng rng(84);
    DensityOperator rho = random_density_operator(2, 2, rng);
    QaeModel model = train(rho, small_config(2, 1, 2, 10, 21));
    std::stringstream buffer;
    save_model(model, buffer);
    QaeModel loaded = load_model(buffer);
    CHECK_EQ(loaded.config.num_qubits, model.config.num_qubits);
    CHECK_EQ(loaded.config.latent_qubits, model.config.latent_qubits);
    CHECK_EQ(loaded.config.seed, model.config.seed);
    CHECK(loaded.final_loss == model.final_loss); // exact
    REQUIRE_EQ(loaded.loss_trace.size(), model.loss_trace.size());
    for (std::size_t i = 0; i < model.loss_trace.size(); ++i) {
        CHECK(loaded.loss_trace[i] == model.loss_trace[i]);
    }
    for (int i = 0; i < model.circuit.param_count(); ++i) {
        CHECK(loaded.circuit.params()(i) == model.circuit.params()(i));
    }
}

TEST_CASE("config validation") {
    QaeConfig config = small_config(3, 1, 2, 10, 1);
    CHECK_NOTHROW(config.validate());
    config.latent_qubits = 3;
    CHECK_THROWS_AS(config.validate(), Error);
    config.latent_qubits = 1;
    config.learning_rate = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.learning_rate = 0.1;
    config.iterations = -1;
    CHECK_THROWS_AS(config.validate(), Error);
}
