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

#ifndef QBOOST_CIRCUIT_HPP
#define QBOOST_CIRCUIT_HPP

#include "qboost/common.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qboost {

/// Tensor product of Pauli letters over consecutive qubits.
class PauliString {
 public:
  /// Accepts letters over {I, X, Y, Z}; throws DomainError otherwise.
  explicit PauliString(std::string letters);

  const std::string& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  int weight() const;
  bool is_identity() const { return weight() == 0; }
  bool z_only() const;
  Matrix matrix() const;
  /// Absolute indices of the non-identity letters when placed at `start`.
  std::vector<int> support(int start) const;

  bool operator==(const PauliString&) const = default;

 private:
  std::string letters_;
};

/// exp(-i angle/2 P) on qubits start .. start+|P|-1, angle = theta[param_index].
struct TrainableRotation {
  PauliString pauli;
  int start_qubit;
  int param_index;
};

struct FixedRotation {
  PauliString pauli;
  int start_qubit;
  double angle;
};

struct Cnot {
  int control;
  int target;
};

/// Arbitrary non-trainable unitary on consecutive qubits starting at start_qubit.
struct FixedUnitary {
  Matrix matrix;
  int start_qubit;
};

/// Measures `measured_qubit` and, conditioned on outcome m, rotates `kept_qubit`
/// about `axis` by theta[param_indices[m]]. The measured qubit is excluded from
/// every later gate.
struct PoolingUnit {
  int measured_qubit;
  int kept_qubit;
  int param_indices[2];
  char axis = 'Y';
};

using Gate = std::variant<TrainableRotation, FixedRotation, Cnot, FixedUnitary, PoolingUnit>;

/// Qubits a gate acts on non-trivially, ascending.
std::vector<int> touched_qubits(const Gate& gate);
std::vector<int> gate_params(const Gate& gate);

/// U(theta) as an ordered gate list with K independent trainable angles.
class ParamCircuit {
 public:
  /// Validates qubit ranges, parameter coverage {0..K-1} with each index used
  /// once, unitarity of fixed gates, and that pooled-out qubits stay untouched.
  ParamCircuit(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  int num_params() const { return num_params_; }
  const std::vector<Gate>& gates() const { return gates_; }
  /// Qubits measured by some PoolingUnit.
  const std::vector<int>& pooled_qubits() const { return pooled_; }

 private:
  int num_qubits_;
  int num_params_ = 0;
  std::vector<Gate> gates_;
  std::vector<int> pooled_;
};

/// Appends gates and hands out parameter indices in order.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int num_qubits) : num_qubits_(num_qubits) {}

  CircuitBuilder& rotation(const std::string& pauli, int start_qubit);
  /// Rotation about `pauli` placed on two (possibly non-adjacent) qubits a < b;
  /// letters between them are identity.
  CircuitBuilder& pair_rotation(char first, char second, int a, int b);
  CircuitBuilder& fixed_rotation(const std::string& pauli, int start_qubit, double angle);
  CircuitBuilder& cnot(int control, int target);
  CircuitBuilder& unitary(Matrix m, int start_qubit);
  CircuitBuilder& pool(int measured, int kept, char axis = 'Y');

  int next_param() const { return next_param_; }
  ParamCircuit build() &&;

 private:
  int num_qubits_;
  int next_param_ = 0;
  std::vector<Gate> gates_;
};

enum class ReadoutMode { kArgmax, kSignOfZ };

/// Projectors {Pi_d} over the measured qubits and the rule turning them into a label.
///
/// Argmax mode: class index d (label d+1) wins when Tr[Pi_d rho] is largest.
/// Sign mode: two projectors |0><0|, |1><1| on one qubit; index 0 is label +1.
class MeasurementSpec {
 public:
  MeasurementSpec(std::vector<int> measured_qubits, std::vector<Matrix> projectors, ReadoutMode mode);

  /// Computational-basis projectors |d><d| for d < num_classes on `measured`.
  static MeasurementSpec computational(std::vector<int> measured, int num_classes);
  static MeasurementSpec sign_of_z(int qubit);

  ReadoutMode mode() const { return mode_; }
  const std::vector<int>& measured_qubits() const { return measured_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  int num_classes() const { return static_cast<int>(projectors_.size()); }
  bool resolves_identity() const { return resolves_identity_; }

 private:
  std::vector<int> measured_;
  std::vector<Matrix> projectors_;
  ReadoutMode mode_;
  bool resolves_identity_ = false;
};

/// cos(angle/2) I - i sin(angle/2) P. Throws for the all-identity string.
Matrix pauli_rotation_matrix(const PauliString& pauli, double angle);

/// CNOT ladder, single RZ on the last support qubit, mirrored ladder. The
/// product equals the original rotation exactly. Only Z/I strings accepted.
std::vector<Gate> decompose_rotation(const Gate& rotation);

/// Replaces every multi-qubit Z-string rotation by its CNOT-ladder form.
ParamCircuit decompose_circuit(const ParamCircuit& circuit);

/// One element of a convolution unit acting on an ordered qubit pair (a, b).
struct ConvStep {
  enum class Target { kFirst, kSecond, kPair };
  Target target;
  std::string pauli;  // one letter for single-qubit steps, two for kPair
};

/// Parses "Y0,Y1,ZZ,Y0,Y1": letter+0/1 is a single-qubit rotation on the
/// first/second qubit, two letters is a two-qubit rotation on the pair.
std::vector<ConvStep> parse_conv_unit(const std::string& text);
std::string format_conv_unit(const std::vector<ConvStep>& unit);

struct QcnnConfig {
  int blocks = 2;
  ReadoutMode mode = ReadoutMode::kSignOfZ;
  int num_classes = 2;
  /// Axes of the single-qubit rotation layer applied before the first block ("" = none).
  std::string prelayer;
  std::vector<ConvStep> conv_unit = parse_conv_unit("Y0,Y1,ZZ,Y0,Y1");
  char pool_axis = 'Y';
};

struct QcnnModel {
  ParamCircuit circuit;
  MeasurementSpec meas;
  /// Active qubits after every block, index 0 is the initial register.
  std::vector<std::vector<int>> active_history;
};

/// Alternating brick-pattern convolution and pooling blocks. Pooling pairs
/// neighbouring active qubits, keeps the first and measures the second;
/// readout happens on the first ceil(log2 D) surviving qubits.
QcnnModel build_qcnn(int num_qubits, const QcnnConfig& config);

}  // namespace qboost

#endif  // QBOOST_CIRCUIT_HPP
