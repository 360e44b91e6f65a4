// Copyright 2026 The qboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qboost/circuit.hpp"

#include "qboost/circuit_io.hpp"
#include "qboost/simulate.hpp"
#include "reference.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

namespace qboost {
namespace {

using std::numbers::pi;
using testing::random_circuit;
using testing::random_density;
using testing::random_theta;

double spectral_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()[0]; }

Matrix circuit_unitary(const ParamCircuit& c, std::span<const double> theta) {
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim_of(c.num_qubits())), static_cast<Eigen::Index>(dim_of(c.num_qubits())));
  for (const Gate& g : c.gates()) u = reference::gate_unitary(g, theta, c.num_qubits()) * u;
  return u;
}

TEST(PauliRotation, ZeroAngleIsIdentity) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const PauliString p(testing::random_pauli(rng, 1 + static_cast<int>(rng.below(3))));
    const Matrix r = pauli_rotation_matrix(p, 0.0);
    EXPECT_LT((r - Matrix::Identity(r.rows(), r.cols())).norm(), 1e-15);
  }
}

TEST(PauliRotation, ZAtPiIsMinusIZ) {
  const Matrix r = pauli_rotation_matrix(PauliString("Z"), pi);
  const Matrix series = std::cos(pi / 2) * Matrix::Identity(2, 2) - cplx(0, std::sin(pi / 2)) * Matrix(pauli::z());
  EXPECT_LT((r - series).norm(), 1e-15);
  EXPECT_LT((r - cplx(0, -1) * Matrix(pauli::z())).norm(), 1e-15);
}

TEST(PauliRotation, RejectsIdentityString) {
  EXPECT_THROW(pauli_rotation_matrix(PauliString("II"), 0.3), DomainError);
  EXPECT_THROW(PauliString("XQ"), DomainError);
}

TEST(PauliRotation, ZZDistanceAtPi) {
  const PauliString zz("ZZ");
  const double d = spectral_norm(pauli_rotation_matrix(zz, pi) - pauli_rotation_matrix(zz, 0.0));
  EXPECT_NEAR(d, std::sqrt(2.0), 1e-12);
  EXPECT_LE(d, pi / 2);
}

TEST(PauliRotation, SpectralDistanceClosedFormOnRandomInputs) {
  Rng rng(606);
  for (int t = 0; t < 1000; ++t) {
    const PauliString p(testing::random_pauli(rng, 1 + static_cast<int>(rng.below(3))));
    const double a = rng.uniform_open(-2 * pi, 2 * pi), b = rng.uniform_open(-2 * pi, 2 * pi);
    const double d = spectral_norm(pauli_rotation_matrix(p, a) - pauli_rotation_matrix(p, b));
    ASSERT_NEAR(d, 2 * std::abs(std::sin((a - b) / 4)), 1e-10);
    ASSERT_LE(d, std::abs(a - b) / 2 + 1e-12);
  }
}

TEST(Decompose, ZZBecomesCnotSandwich) {
  const auto parts = decompose_rotation(TrainableRotation{PauliString("ZZ"), 0, 0});
  ASSERT_EQ(parts.size(), 3U);
  const auto* c0 = std::get_if<Cnot>(&parts[0]);
  const auto* rz = std::get_if<TrainableRotation>(&parts[1]);
  const auto* c1 = std::get_if<Cnot>(&parts[2]);
  ASSERT_TRUE(c0 && rz && c1);
  EXPECT_EQ(c0->control, 0);
  EXPECT_EQ(c0->target, 1);
  EXPECT_EQ(rz->pauli.letters(), "Z");
  EXPECT_EQ(rz->start_qubit, 1);
  EXPECT_EQ(c1->control, 0);
  EXPECT_EQ(c1->target, 1);
}

TEST(Decompose, ZZZUsesTwoRungLadder) {
  const auto parts = decompose_rotation(FixedRotation{PauliString("ZZZ"), 0, 0.4});
  ASSERT_EQ(parts.size(), 5U);
  for (std::size_t i : {0U, 1U, 3U, 4U}) EXPECT_TRUE(std::holds_alternative<Cnot>(parts[i]));
  EXPECT_TRUE(std::holds_alternative<FixedRotation>(parts[2]));
  const ParamCircuit whole(3, {FixedRotation{PauliString("ZZZ"), 0, 0.4}});
  const ParamCircuit ladder(3, parts);
  EXPECT_LT((circuit_unitary(whole, {}) - circuit_unitary(ladder, {})).norm(), 1e-12);
}

TEST(Decompose, ZeroAngleProductIsIdentity) {
  const ParamCircuit ladder(3, decompose_rotation(FixedRotation{PauliString("ZIZ"), 0, 0.0}));
  EXPECT_LT((circuit_unitary(ladder, {}) - Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Decompose, RejectsNonZStrings) {
  EXPECT_THROW(decompose_rotation(TrainableRotation{PauliString("XZ"), 0, 0}), DomainError);
  EXPECT_THROW(decompose_rotation(Gate{Cnot{0, 1}}), DomainError);
}

TEST(Decompose, RzzMatchesItsLadderOnStates) {
  Rng rng(9);
  const ParamCircuit c(2, {TrainableRotation{PauliString("ZZ"), 0, 0}});
  const ParamCircuit d = decompose_circuit(c);
  for (int t = 0; t < 10; ++t) {
    const auto theta = random_theta(rng, 1);
    const DensityMatrix rho = random_density(rng, 2);
    EXPECT_LT((execute(c, theta, rho).matrix() - execute(d, theta, rho).matrix()).norm(), 1e-10);
  }
}

TEST(ParamCircuit, ValidatesStructure) {
  EXPECT_THROW(ParamCircuit(2, {TrainableRotation{PauliString("Z"), 2, 0}}), Error);
  EXPECT_THROW(ParamCircuit(2, {TrainableRotation{PauliString("Z"), 0, 1}}), Error);
  EXPECT_THROW(ParamCircuit(2, {TrainableRotation{PauliString("Z"), 0, 0}, TrainableRotation{PauliString("Z"), 1, 0}}),
               Error);
  EXPECT_THROW(ParamCircuit(2, {Cnot{0, 0}}), Error);
  EXPECT_THROW(ParamCircuit(2, {FixedUnitary{Matrix::Ones(2, 2), 0}}), Error);
  // Pooled-out qubit used again.
  EXPECT_THROW(ParamCircuit(2, {PoolingUnit{1, 0, {0, 1}, 'Y'}, TrainableRotation{PauliString("X"), 1, 2}}), Error);
  EXPECT_NO_THROW(ParamCircuit(2, {PoolingUnit{1, 0, {0, 1}, 'Y'}, TrainableRotation{PauliString("X"), 0, 2}}));
}

TEST(Execute, EmptyCircuitLeavesInputUnchanged) {
  Rng rng(4);
  const DensityMatrix rho = random_density(rng, 3);
  const ParamCircuit empty(3, {});
  EXPECT_LT((execute(empty, {}, rho).matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(Execute, NoisyCnotOnZeroStateMatchesHandKraus) {
  const auto noise = make_noise_model(NoiseKind::kDepolarizing, 0.03);
  const ParamCircuit c(2, {Cnot{0, 1}});
  const DensityMatrix out = execute(c, {}, DensityMatrix::basis(2, 0), &*noise);
  // CNOT fixes |00>; then the channel on each touched qubit.
  Matrix rho = DensityMatrix::basis(2, 0).matrix();
  for (int q = 0; q < 2; ++q) {
    Matrix next = Matrix::Zero(4, 4);
    for (const Matrix2& e : noise->two_qubit_gate_channel.ops()) {
      const Matrix k = embed_local_operator(e, q, 2);
      next += k * rho * k.adjoint();
    }
    rho = next;
  }
  EXPECT_NEAR(out.trace(), 1.0, 1e-12);
  EXPECT_LT(out.purity(), 1.0);
  EXPECT_LT((out.matrix() - rho).norm(), 1e-12);
}

TEST(Execute, PurityPreservedWithoutPooling) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const ParamCircuit c = random_circuit(rng, 3, 10, false);
    const auto theta = random_theta(rng, c.num_params());
    const DensityMatrix out = execute(c, theta, DensityMatrix::from_pure(testing::random_state(rng, 3)));
    EXPECT_NEAR(out.purity(), 1.0, 1e-10);
  }
}

TEST(Probabilities, IdentityCircuitOnBasisState) {
  const ParamCircuit c(2, {});
  const auto meas = MeasurementSpec::computational({0, 1}, 4);
  const auto p = outcome_probabilities(c, {}, DensityMatrix::basis(2, 0), meas);
  EXPECT_EQ(p, (std::vector<double>{1, 0, 0, 0}));
  const auto q = outcome_probabilities(c, {}, DensityMatrix::maximally_mixed(2), meas);
  for (double x : q) EXPECT_NEAR(x, 0.25, 1e-15);
}

TEST(Probabilities, RandomCircuitMatchesBruteForceTrace) {
  Rng rng(31);
  const auto meas = MeasurementSpec::computational({0, 2}, 4);
  for (int t = 0; t < 20; ++t) {
    const ParamCircuit c = random_circuit(rng, 3, 8, false);
    const auto theta = random_theta(rng, c.num_params());
    const DensityMatrix rho = random_density(rng, 3);
    const Matrix u = circuit_unitary(c, theta);
    const Matrix out = u * rho.matrix() * u.adjoint();
    const auto p = outcome_probabilities(c, theta, rho, meas);
    for (int d = 0; d < 4; ++d) {
      const Matrix local = meas.projectors()[static_cast<std::size_t>(d)];
      const Matrix proj = reference::embed_projector(local, meas.measured_qubits(), 3);
      EXPECT_NEAR(p[static_cast<std::size_t>(d)], (proj * out).trace().real(), 1e-10);
    }
  }
}

TEST(ZExpectation, BasisStatesAndRy) {
  const ParamCircuit id(1, {});
  EXPECT_NEAR(z_expectation_on(id, {}, DensityMatrix::basis(1, 0), 0), 1.0, 1e-15);
  EXPECT_NEAR(z_expectation_on(id, {}, DensityMatrix::basis(1, 1), 0), -1.0, 1e-15);
  const ParamCircuit ry(1, {TrainableRotation{PauliString("Y"), 0, 0}});
  for (double th : {0.0, 0.3, 1.2, 2.9, -1.7}) {
    const std::vector<double> theta{th};
    EXPECT_NEAR(z_expectation_on(ry, theta, DensityMatrix::basis(1, 0), 0), std::cos(th), 1e-14);
  }
}

TEST(Measurement, ValidatesProjectors) {
  EXPECT_THROW(MeasurementSpec({0}, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}, ReadoutMode::kArgmax), Error);
  EXPECT_THROW(MeasurementSpec::computational({0}, 3), Error);
  EXPECT_NO_THROW(MeasurementSpec::computational({0, 1}, 3));
}

TEST(Qcnn, SixQubitTwoBlockStructure) {
  const QcnnModel m = build_qcnn(6, QcnnConfig{});
  ASSERT_EQ(m.active_history.size(), 3U);
  EXPECT_EQ(m.active_history[0].size(), 6U);
  EXPECT_EQ(m.active_history[1].size(), 3U);
  EXPECT_EQ(m.active_history[2], (std::vector<int>{0, 4}));
  EXPECT_EQ(m.meas.measured_qubits(), (std::vector<int>{0}));
  EXPECT_EQ(m.meas.mode(), ReadoutMode::kSignOfZ);
}

TEST(Qcnn, OneBlockFourClassReadsTwoQubits) {
  QcnnConfig cfg;
  cfg.blocks = 1;
  cfg.mode = ReadoutMode::kArgmax;
  cfg.num_classes = 4;
  const QcnnModel m = build_qcnn(6, cfg);
  EXPECT_EQ(m.meas.num_classes(), 4);
  EXPECT_EQ(m.meas.measured_qubits().size(), 2U);
}

TEST(Qcnn, RejectsUnsupportedWidths) {
  EXPECT_THROW(build_qcnn(5, QcnnConfig{}), Error);
}

TEST(Qcnn, ParameterIndicesAreGapFree) {
  for (int n : {4, 6, 8})
    for (int blocks : {1, 2}) {
      QcnnConfig cfg;
      cfg.blocks = blocks;
      cfg.prelayer = "Y";
      const QcnnModel m = build_qcnn(n, cfg);
      std::vector<int> seen;
      for (const Gate& g : m.circuit.gates())
        for (int k : gate_params(g)) seen.push_back(k);
      std::sort(seen.begin(), seen.end());
      ASSERT_EQ(static_cast<int>(seen.size()), m.circuit.num_params());
      for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], static_cast<int>(i));
    }
}

TEST(ConvUnit, ParseAndFormatRoundTrip) {
  const std::string text = "Y0,Y1,ZZ,X0,XY";
  EXPECT_EQ(format_conv_unit(parse_conv_unit(text)), text);
  EXPECT_THROW(parse_conv_unit("Y2"), DomainError);
  EXPECT_THROW(parse_conv_unit(""), DomainError);
}

TEST(CircuitIo, RoundTripPreservesSemanticsAndText) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const ParamCircuit c = random_circuit(rng, 3, 10);
    const std::string text = serialize_circuit(c);
    const ParamCircuit back = parse_circuit(text);
    EXPECT_EQ(serialize_circuit(back), text);
    const auto theta = random_theta(rng, c.num_params());
    const DensityMatrix rho = random_density(rng, 3);
    EXPECT_LT((execute(c, theta, rho).matrix() - execute(back, theta, rho).matrix()).norm(), 1e-13);
  }
  EXPECT_THROW(parse_circuit("qubits 2\nbogus - 0 -\n"), Error);
}

}  // namespace
}  // namespace qboost
