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

#include "qboost/kernels.hpp"

#include "qboost/simulate.hpp"
#include "reference.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

namespace qboost {
namespace {

using testing::random_circuit;
using testing::random_density;
using testing::random_state;
using testing::random_theta;

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(Kernels, PauliMasksFollowMsbOrdering) {
  const auto m = kernels::pauli_masks(PauliString("XZ"), 0, 2);
  EXPECT_EQ(m.x, 0b10U);
  EXPECT_EQ(m.z, 0b01U);
  const auto y = kernels::pauli_masks(PauliString("Y"), 1, 3);
  EXPECT_EQ(y.x, 0b010U);
  EXPECT_EQ(y.z, 0b010U);
  EXPECT_NEAR(y.phase.imag(), 1.0, 0.0);
}

TEST(Kernels, RotateMatchesDenseRotation) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - len + 1)));
    const PauliString p(testing::random_pauli(rng, len));
    const double angle = rng.uniform_open(-4, 4);
    const StateVector psi = random_state(rng, n);
    Vector v = psi.amplitudes();
    kernels::rotate(v.data(), n, kernels::pauli_masks(p, start, n), angle);
    const Vector expected = embed_local_operator(pauli_rotation_matrix(p, angle), start, n) * psi.amplitudes();
    EXPECT_LT((v - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kernels, ExecuteMatchesReferenceWithAndWithoutNoise) {
  Rng rng(11);
  const auto noise = make_noise_model(NoiseKind::kAmplitudeDamping, 0.2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const ParamCircuit c = random_circuit(rng, n, 8);
    const auto theta = random_theta(rng, c.num_params());
    const DensityMatrix rho = random_density(rng, n);
    const NoiseModel* nm = (trial % 2) ? &*noise : nullptr;
    const DensityMatrix fast = execute(c, theta, rho, nm);
    const Matrix slow = reference::execute(c, theta, rho.matrix(), nm);
    EXPECT_LT(max_abs_diff(fast.matrix(), slow), 1e-11);
  }
}

TEST(Kernels, PurePathMatchesDensityPathOnReadout) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(2));
    const ParamCircuit c = random_circuit(rng, n, 10);
    const auto theta = random_theta(rng, c.num_params());
    const StateVector psi = random_state(rng, n);
    const auto meas = MeasurementSpec::computational({0, 1}, 4);
    const auto pure = class_probabilities(c, theta, psi, meas);
    const auto mixed = reference::probabilities(c, theta, DensityMatrix::from_pure(psi).matrix(), meas);
    for (std::size_t d = 0; d < 4; ++d) EXPECT_NEAR(pure[d], mixed[d], 1e-12);
  }
}

class GradientCase : public ::testing::TestWithParam<bool> {};

TEST_P(GradientCase, AdjointGradientEqualsLiteralShiftRule) {
  const bool noisy = GetParam();
  Rng rng(noisy ? 21 : 17);
  const auto noise = make_noise_model(NoiseKind::kDepolarizing, 0.03);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const ParamCircuit c = random_circuit(rng, n, 7);
    const auto theta = random_theta(rng, c.num_params());
    const auto meas = MeasurementSpec::computational({0}, 2);
    const NoiseModel* nm = noisy ? &*noise : nullptr;
    const QuantumInput input = trial % 3 == 0 ? QuantumInput(random_density(rng, n)) : QuantumInput(random_state(rng, n));
    const std::vector<double> w = {rng.normal(), rng.normal()};
    std::vector<double> grad(static_cast<std::size_t>(c.num_params()), 0.0);
    const auto prog = compile_for(c, theta, meas, nm);
    kernels::probabilities_and_gradient(
        prog, input, meas, [&](std::span<const double>) { return w; }, grad);
    const Matrix rho = std::holds_alternative<DensityMatrix>(input)
                           ? std::get<DensityMatrix>(input).matrix()
                           : DensityMatrix::from_pure(std::get<StateVector>(input)).matrix();
    const auto jac = reference::shift_jacobian(c, theta, rho, meas, nm);
    for (std::size_t k = 0; k < grad.size(); ++k)
      EXPECT_NEAR(grad[k], w[0] * jac[0][k] + w[1] * jac[1][k], 1e-11) << "trial " << trial << " k " << k;
  }
}

INSTANTIATE_TEST_SUITE_P(NoiseOnOff, GradientCase, ::testing::Bool());

TEST(Kernels, BatchGradientIndependentOfThreadCount) {
  Rng rng(5);
  const ParamCircuit c = random_circuit(rng, 4, 12);
  const auto theta = random_theta(rng, c.num_params());
  const auto meas = MeasurementSpec::sign_of_z(0);
  std::vector<QuantumInput> inputs;
  for (int i = 0; i < 37; ++i) inputs.emplace_back(random_state(rng, 4));
  const auto prog = compile_for(c, theta, meas, nullptr);
  auto coeff = [](std::size_t i, std::span<const double>) {
    return std::vector<double>{static_cast<double>(i % 3), -1.0};
  };
  auto run = [&](const char* threads) {
    setenv("QBOOST_THREADS", threads, 1);
    std::vector<double> g(static_cast<std::size_t>(c.num_params()), 0.0);
    kernels::batch_probabilities_and_gradient(prog, inputs, meas, coeff, g);
    return g;
  };
  const auto g1 = run("1");
  const auto g3 = run("3");
  unsetenv("QBOOST_THREADS");
  EXPECT_EQ(g1, g3);
}

}  // namespace
}  // namespace qboost
