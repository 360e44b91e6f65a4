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

#include "reference.hpp"

#include "qboost/qstate.hpp"

#include <cmath>
#include <numbers>

namespace qboost::reference {

namespace {

Matrix ket_bra(int a, int b) {
  Matrix m = Matrix::Zero(2, 2);
  m(a, b) = 1.0;
  return m;
}

Matrix axis_rotation(char axis, double angle) {
  return std::cos(angle / 2) * Matrix(Matrix2::Identity()) -
         cplx(0, 1) * std::sin(angle / 2) * Matrix(pauli::letter(axis));
}

Matrix conjugate_by(const Matrix& u, const Matrix& rho) { return u * rho * u.adjoint(); }

Matrix apply_kraus(const std::vector<Matrix>& ops, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& k : ops) out += k * rho * k.adjoint();
  return out;
}

}  // namespace

Matrix kron_all(int n, const std::function<Matrix(int)>& factor) {
  Matrix m = factor(0);
  for (int q = 1; q < n; ++q) m = kron(m, factor(q));
  return m;
}

Matrix gate_unitary(const Gate& gate, std::span<const double> theta, int n) {
  const Matrix id = Matrix2::Identity();
  if (const auto* g = std::get_if<TrainableRotation>(&gate)) {
    const double a = theta[static_cast<std::size_t>(g->param_index)];
    const Matrix p = PauliString(g->pauli).matrix();
    const Matrix local = std::cos(a / 2) * Matrix::Identity(p.rows(), p.cols()) - cplx(0, 1) * std::sin(a / 2) * p;
    return embed_local_operator(local, g->start_qubit, n);
  }
  if (const auto* g = std::get_if<FixedRotation>(&gate)) {
    const Matrix p = g->pauli.matrix();
    const Matrix local =
        std::cos(g->angle / 2) * Matrix::Identity(p.rows(), p.cols()) - cplx(0, 1) * std::sin(g->angle / 2) * p;
    return embed_local_operator(local, g->start_qubit, n);
  }
  if (const auto* g = std::get_if<Cnot>(&gate)) {
    const Matrix p0 = kron_all(n, [&](int q) { return q == g->control ? ket_bra(0, 0) : id; });
    const Matrix p1 = kron_all(n, [&](int q) {
      if (q == g->control) return ket_bra(1, 1);
      if (q == g->target) return Matrix(pauli::x());
      return id;
    });
    return p0 + p1;
  }
  if (const auto* g = std::get_if<FixedUnitary>(&gate)) return embed_local_operator(g->matrix, g->start_qubit, n);
  throw Error("reference::gate_unitary: pooling units are channels");
}

std::vector<Matrix> pooling_kraus(const PoolingUnit& g, std::span<const double> theta, int n) {
  std::vector<Matrix> ops;
  const Matrix id = Matrix2::Identity();
  for (int m = 0; m < 2; ++m) {
    const Matrix r = axis_rotation(g.axis, theta[static_cast<std::size_t>(g.param_indices[m])]);
    ops.push_back(kron_all(n, [&](int q) {
      if (q == g.measured_qubit) return ket_bra(m, m);
      if (q == g.kept_qubit) return r;
      return id;
    }));
  }
  return ops;
}

std::vector<Matrix> embedded_kraus(const KrausChannel& ch, int qubit, int n) {
  std::vector<Matrix> ops;
  const Matrix id = Matrix2::Identity();
  for (const Matrix2& e : ch.ops()) ops.push_back(kron_all(n, [&](int q) { return q == qubit ? Matrix(e) : id; }));
  return ops;
}

Matrix execute(const ParamCircuit& circuit, std::span<const double> theta, const Matrix& rho,
               const NoiseModel* noise) {
  const int n = circuit.num_qubits();
  if (static_cast<int>(theta.size()) != circuit.num_params()) throw DimensionError("reference::execute: theta");
  Matrix state = rho;
  for (const Gate& gate : circuit.gates()) {
    const auto* pool = std::get_if<PoolingUnit>(&gate);
    state = pool ? apply_kraus(pooling_kraus(*pool, theta, n), state) : conjugate_by(gate_unitary(gate, theta, n), state);
    if (noise == nullptr || !noise->enabled) continue;
    if (pool && !noise->noisy_pooling) continue;
    const auto touched = touched_qubits(gate);
    if (touched.size() < 2) continue;
    for (int q : touched) state = apply_kraus(embedded_kraus(noise->two_qubit_gate_channel, q, n), state);
  }
  return state;
}

Matrix embed_projector(const Matrix& local, std::span<const int> measured, int n) {
  const int m = static_cast<int>(measured.size());
  const Matrix id = Matrix2::Identity();
  Matrix full = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (Eigen::Index a = 0; a < local.rows(); ++a)
    for (Eigen::Index b = 0; b < local.cols(); ++b) {
      if (local(a, b) == cplx(0.0)) continue;
      full += local(a, b) * kron_all(n, [&](int q) {
                for (int t = 0; t < m; ++t)
                  if (measured[static_cast<std::size_t>(t)] == q)
                    return ket_bra(static_cast<int>((a >> (m - 1 - t)) & 1), static_cast<int>((b >> (m - 1 - t)) & 1));
                return id;
              });
    }
  return full;
}

std::vector<double> probabilities(const ParamCircuit& circuit, std::span<const double> theta, const Matrix& rho,
                                  const MeasurementSpec& meas, const NoiseModel* noise) {
  const Matrix out = execute(circuit, theta, rho, noise);
  std::vector<double> p;
  for (const Matrix& proj : meas.projectors())
    p.push_back((embed_projector(proj, meas.measured_qubits(), circuit.num_qubits()) * out).trace().real());
  return p;
}

std::vector<std::vector<double>> shift_jacobian(const ParamCircuit& circuit, std::span<const double> theta,
                                                const Matrix& rho, const MeasurementSpec& meas,
                                                const NoiseModel* noise) {
  const std::size_t k = theta.size();
  std::vector<std::vector<double>> jac(meas.projectors().size(), std::vector<double>(k, 0.0));
  std::vector<double> t(theta.begin(), theta.end());
  for (std::size_t j = 0; j < k; ++j) {
    t[j] = theta[j] + std::numbers::pi / 2;
    const auto plus = probabilities(circuit, t, rho, meas, noise);
    t[j] = theta[j] - std::numbers::pi / 2;
    const auto minus = probabilities(circuit, t, rho, meas, noise);
    t[j] = theta[j];
    for (std::size_t d = 0; d < jac.size(); ++d) jac[d][j] = (plus[d] - minus[d]) / 2;
  }
  return jac;
}

}  // namespace qboost::reference
