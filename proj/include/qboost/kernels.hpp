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

#ifndef QBOOST_KERNELS_HPP
#define QBOOST_KERNELS_HPP

// Low-level simulation kernels.
//
// Pure states are contiguous arrays of 2^n amplitudes. A density matrix on n
// qubits is stored column-major, so it doubles as a flat array over 2n bits:
// the low n bits index the row and the high n bits the column. Left products
// act on the low bits; right products act on the high bits with the
// conjugated operator. Bit positions follow bit_of(): qubit 0 is the MSB.

#include "qboost/circuit.hpp"
#include "qboost/common.hpp"
#include "qboost/noise.hpp"
#include "qboost/qstate.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qboost {

using QuantumInput = std::variant<StateVector, DensityMatrix>;

namespace kernels {

/// P|b> = phase * (-1)^popcount(b & z) |b ^ x>.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cplx phase{1.0, 0.0};
};

PauliMasks pauli_masks(const PauliString& p, int start_qubit, int num_qubits);
/// Masks of conj(P) moved to the column bits of a flattened density matrix.
PauliMasks column_masks(const PauliMasks& m, int num_qubits);

/// v <- exp(-i angle/2 P) v over an array of 2^nbits entries.
void rotate(cplx* v, int nbits, const PauliMasks& m, double angle);
/// sum_b conj(u_b) (P v)_b restricted to indices with (b & filter_mask) == filter_value.
cplx pauli_overlap(const cplx* u, const cplx* v, int nbits, const PauliMasks& m, std::uint64_t filter_mask = 0,
                   std::uint64_t filter_value = 0);
/// v <- U v where U acts on `bits` (bits[0] is the most significant local bit).
void apply_local(cplx* v, int nbits, std::span<const int> bits, const Matrix& u);

/// rho <- R rho R^dagger for the Pauli rotation R.
void dm_rotate(cplx* rho, int n, const PauliMasks& m, double angle);
/// rho <- U rho U^dagger.
void dm_local(cplx* rho, int n, std::span<const int> bits, const Matrix& u);
/// Applies a 4x4 block superoperator (layout of KrausChannel) on `bit`.
void dm_superop(cplx* rho, int n, int bit, const Matrix4& s);
/// Zeroes the coherences between the two values of `bit`.
void dm_dephase(cplx* rho, int n, int bit);

struct RotationOp {
  PauliMasks masks;
  double angle;
  int param;  // -1 for fixed rotations
};

struct LocalOp {
  std::vector<int> bits;
  Matrix u;
  Matrix u_adj;
};

/// Controlled rotation on (measured, kept). In the mixed program it is
/// followed by dephasing of the measured bit, which reproduces the
/// measurement-conditioned channel. The pure program omits the dephasing:
/// the measured qubit is never touched again and is discarded at readout, so
/// every kept-qubit statistic is identical (deferred measurement).
struct PoolOp {
  int meas_bit;
  int kept_bit;
  PauliMasks kept;  // generator on the kept qubit
  int param[2];
  LocalOp controlled;
};

struct NoiseOp {
  int bit;
  Matrix4 super;
  Matrix4 adjoint;
};

using Op = std::variant<RotationOp, LocalOp, PoolOp, NoiseOp>;

/// A circuit bound to concrete angles, with noise operations inserted.
struct Program {
  int num_qubits = 0;
  int num_params = 0;
  std::vector<Op> ops;
  bool mixed = false;
};

/// Binds theta. Noise (when active) follows every gate touching two or more
/// qubits, applied to each touched qubit in ascending order.
Program compile(const ParamCircuit& circuit, std::span<const double> theta, const NoiseModel* noise);

void run_pure(const Program& prog, cplx* psi);
void run_mixed(const Program& prog, cplx* rho);

/// Reduced density matrix on `qubits` (result order as listed).
Matrix reduced_pure(const cplx* psi, int n, std::span<const int> qubits);
Matrix reduced_mixed(const cplx* rho, int n, std::span<const int> qubits);

/// Probabilities Tr[Pi_d rho_reduced].
std::vector<double> readout(const Matrix& reduced, const MeasurementSpec& meas);

/// Class probabilities of one input under a compiled program.
std::vector<double> probabilities(const Program& prog, const QuantumInput& input, const MeasurementSpec& meas);

/// Maps probabilities to the coefficients w_d of the observable sum_d w_d Pi_d.
using CoefficientFn = std::function<std::vector<double>(std::span<const double>)>;

/// Runs the program forward, evaluates w = coeffs(p), and adds
/// d/dtheta_k sum_d w_d p_d(theta) to grad[k]. The derivative is the exact
/// two-term shift value [f(theta_k + pi/2) - f(theta_k - pi/2)] / 2, computed
/// from cached forward states and a back-propagated observable instead of
/// re-running the circuit twice per parameter. Returns p.
std::vector<double> probabilities_and_gradient(const Program& prog, const QuantumInput& input,
                                               const MeasurementSpec& meas, const CoefficientFn& coeffs,
                                               std::span<double> grad);

/// Per-sample probabilities, evaluated in parallel over samples.
std::vector<std::vector<double>> batch_probabilities(const Program& prog, std::span<const QuantumInput> inputs,
                                                     const MeasurementSpec& meas);

using SampleCoefficientFn = std::function<std::vector<double>(std::size_t, std::span<const double>)>;

/// Parallel over samples; per-sample gradients land in indexed slots and are
/// summed into `grad` in sample order, so the result does not depend on the
/// thread count.
std::vector<std::vector<double>> batch_probabilities_and_gradient(const Program& prog,
                                                                  std::span<const QuantumInput> inputs,
                                                                  const MeasurementSpec& meas,
                                                                  const SampleCoefficientFn& coeffs,
                                                                  std::span<double> grad);

}  // namespace kernels
}  // namespace qboost

#endif  // QBOOST_KERNELS_HPP
