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

// Line-oriented circuit text format.
//
//   qubits <N>
//   <kind> <pauli> <qubits> <param_index|angle>
//
// kinds:
//   rot     trainable rotation   pauli letters   consecutive qubits   param index
//   frot    fixed rotation       pauli letters   consecutive qubits   angle (radians)
//   cnot    CNOT                 -               control,target       -
//   unitary fixed unitary        -               consecutive qubits   row-major re:im entries joined by ';'
//   pool    pooling unit         rotation axis   measured,kept        index0,index1
//
// Blank lines and lines starting with '#' are ignored. Doubles are written in
// shortest round-trip form, so parse(serialize(c)) reproduces c exactly.

#ifndef QBOOST_CIRCUIT_IO_HPP
#define QBOOST_CIRCUIT_IO_HPP

#include "qboost/circuit.hpp"

#include <string>

namespace qboost {

std::string serialize_circuit(const ParamCircuit& circuit);
ParamCircuit parse_circuit(const std::string& text);

}  // namespace qboost

#endif  // QBOOST_CIRCUIT_IO_HPP
