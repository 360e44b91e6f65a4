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

#include "qboost/simulate.hpp"

#include <algorithm>
#include <vector>

namespace qboost {

DensityMatrix execute(const ParamCircuit& circuit, std::span<const double> theta, const DensityMatrix& input,
                      const NoiseModel* noise) {
  if (input.num_qubits() != circuit.num_qubits()) throw DimensionError("execute: input width");
  const kernels::Program prog = kernels::compile(circuit, theta, noise);
  Matrix rho = input.matrix();
  kernels::run_mixed(prog, rho.data());
  return trusted_density(input.num_qubits(), std::move(rho));
}

StateVector execute_pure(const ParamCircuit& circuit, std::span<const double> theta, const StateVector& input) {
  if (input.num_qubits() != circuit.num_qubits()) throw DimensionError("execute_pure: input width");
  const kernels::Program prog = kernels::compile(circuit, theta, nullptr);
  Vector psi = input.amplitudes();
  kernels::run_pure(prog, psi.data());
  return trusted_state(input.num_qubits(), std::move(psi));
}

kernels::Program compile_for(const ParamCircuit& circuit, std::span<const double> theta, const MeasurementSpec& meas,
                             const NoiseModel* noise) {
  kernels::Program prog = kernels::compile(circuit, theta, noise);
  const auto& pooled = circuit.pooled_qubits();
  for (int q : meas.measured_qubits()) {
    if (q < 0 || q >= circuit.num_qubits()) throw DomainError("measured qubit out of range");
    if (std::find(pooled.begin(), pooled.end(), q) != pooled.end()) prog.mixed = true;
  }
  return prog;
}

std::vector<double> outcome_probabilities(const ParamCircuit& circuit, std::span<const double> theta,
                                          const QuantumInput& input, const MeasurementSpec& meas,
                                          const NoiseModel* noise) {
  return kernels::probabilities(compile_for(circuit, theta, meas, noise), input, meas);
}

std::vector<double> class_probabilities(const ParamCircuit& circuit, std::span<const double> theta,
                                        const QuantumInput& input, const MeasurementSpec& meas,
                                        const NoiseModel* noise) {
  if (meas.mode() != ReadoutMode::kArgmax) throw DomainError("class_probabilities requires argmax readout");
  return outcome_probabilities(circuit, theta, input, meas, noise);
}

double z_expectation_on(const ParamCircuit& circuit, std::span<const double> theta, const QuantumInput& input,
                        int qubit, const NoiseModel* noise) {
  if (qubit < 0 || qubit >= circuit.num_qubits()) throw DomainError("z_expectation_on: qubit out of range");
  const std::vector<double> p = outcome_probabilities(circuit, theta, input, MeasurementSpec::sign_of_z(qubit), noise);
  return p[0] - p[1];
}

}  // namespace qboost
