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

#ifndef QBOOST_SIMULATE_HPP
#define QBOOST_SIMULATE_HPP

#include "qboost/circuit.hpp"
#include "qboost/kernels.hpp"
#include "qboost/noise.hpp"
#include "qboost/qstate.hpp"

#include <span>
#include <vector>

namespace qboost {

/// Runs the circuit on a density matrix. Pooling units act as their
/// measurement channel and keep every qubit; with an active noise model each
/// gate touching two or more qubits is followed by the channel on each of them.
DensityMatrix execute(const ParamCircuit& circuit, std::span<const double> theta, const DensityMatrix& input,
                      const NoiseModel* noise = nullptr);

/// Noiseless pure-state run. Pooling units become controlled rotations
/// (deferred measurement), which leaves every readout on unpooled qubits
/// identical to execute().
StateVector execute_pure(const ParamCircuit& circuit, std::span<const double> theta, const StateVector& input);

/// Tr[Pi_d U rho U^dagger] for argmax-mode measurements.
std::vector<double> class_probabilities(const ParamCircuit& circuit, std::span<const double> theta,
                                        const QuantumInput& input, const MeasurementSpec& meas,
                                        const NoiseModel* noise = nullptr);

/// Same quantities for any readout mode.
std::vector<double> outcome_probabilities(const ParamCircuit& circuit, std::span<const double> theta,
                                          const QuantumInput& input, const MeasurementSpec& meas,
                                          const NoiseModel* noise = nullptr);

/// Tr[Z_qubit out].
double z_expectation_on(const ParamCircuit& circuit, std::span<const double> theta, const QuantumInput& input,
                        int qubit, const NoiseModel* noise = nullptr);

/// Compiles for the given readout. Falls back to density-matrix evaluation when
/// the readout touches a pooled qubit.
kernels::Program compile_for(const ParamCircuit& circuit, std::span<const double> theta, const MeasurementSpec& meas,
                             const NoiseModel* noise);

}  // namespace qboost

#endif  // QBOOST_SIMULATE_HPP
