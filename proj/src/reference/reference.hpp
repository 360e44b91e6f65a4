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

// Serial full-matrix simulator. Every operator is built as a dense 2^N x 2^N
// matrix via Kronecker products and applied as U rho U^dagger. Slow; it exists
// as an oracle for the fast kernels and as the baseline in benchmarks.

#ifndef QBOOST_REFERENCE_HPP
#define QBOOST_REFERENCE_HPP

#include "qboost/circuit.hpp"
#include "qboost/noise.hpp"

#include <functional>
#include <span>
#include <vector>

namespace qboost::reference {

/// Tensor product over all qubits of `factor(q)`.
Matrix kron_all(int n, const std::function<Matrix(int)>& factor);

Matrix gate_unitary(const Gate& gate, std::span<const double> theta, int n);
std::vector<Matrix> pooling_kraus(const PoolingUnit& gate, std::span<const double> theta, int n);
std::vector<Matrix> embedded_kraus(const KrausChannel& ch, int qubit, int n);

Matrix execute(const ParamCircuit& circuit, std::span<const double> theta, const Matrix& rho,
               const NoiseModel* noise = nullptr);

/// Projector on the full register built from the local projector on `measured`.
Matrix embed_projector(const Matrix& local, std::span<const int> measured, int n);

std::vector<double> probabilities(const ParamCircuit& circuit, std::span<const double> theta, const Matrix& rho,
                                  const MeasurementSpec& meas, const NoiseModel* noise = nullptr);

/// jac[d][k] = [p_d(theta + pi/2 e_k) - p_d(theta - pi/2 e_k)] / 2.
std::vector<std::vector<double>> shift_jacobian(const ParamCircuit& circuit, std::span<const double> theta,
                                                const Matrix& rho, const MeasurementSpec& meas,
                                                const NoiseModel* noise = nullptr);

}  // namespace qboost::reference

#endif  // QBOOST_REFERENCE_HPP
