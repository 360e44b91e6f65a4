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

#ifndef QBOOST_QSTATE_HPP
#define QBOOST_QSTATE_HPP

#include "qboost/common.hpp"

#include <span>
#include <utility>
#include <vector>

namespace qboost {

/// Pure state on N qubits, stored as 2^N amplitudes. Qubit 0 is the most
/// significant bit of the basis index.
class StateVector {
 public:
  /// Validates length and unit norm.
  StateVector(int num_qubits, Vector amplitudes);

  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  struct Unchecked {};
  StateVector(Unchecked, int num_qubits, Vector amplitudes)
      : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {}
  friend StateVector trusted_state(int, Vector);

  int num_qubits_;
  Vector amps_;
};

/// Mixed state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and PSD within Tolerances.
  DensityMatrix(int num_qubits, Matrix matrix);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix basis(int num_qubits, std::size_t index);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double trace() const { return m_.trace().real(); }
  double purity() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, int num_qubits, Matrix matrix)
      : num_qubits_(num_qubits), m_(std::move(matrix)) {}
  friend DensityMatrix trusted_density(int, Matrix);

  int num_qubits_;
  Matrix m_;
};

/// Hermitian operator on N qubits (observable or Hamiltonian).
class HermitianOperator {
 public:
  HermitianOperator(int num_qubits, Matrix matrix);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  int num_qubits_;
  Matrix m_;
};

/// Wraps kernel output without re-running the O(8^N) PSD check. The caller
/// guarantees the matrix came from a CPTP map applied to a valid state.
DensityMatrix trusted_density(int num_qubits, Matrix matrix);
StateVector trusted_state(int num_qubits, Vector amplitudes);

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
/// 2x2 matrix of letter I, X, Y or Z.
Matrix2 letter(char c);
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);

/// Largest elementwise |A - A^dagger|.
double hermiticity_residue(const Matrix& a);

/// Returns Tr[O rho]; throws if the imaginary residue exceeds 1e-9.
double expectation(const HermitianOperator& op, const DensityMatrix& state);

/// Reduced state on `keep` (qubit order of the result follows ascending index).
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep);

/// I^(start) (x) local (x) I^(rest) on `total_qubits` qubits.
Matrix embed_local_operator(const Matrix& local, int start_qubit, int total_qubits);

struct GroundState {
  double energy;
  StateVector state;
};

/// Lowest eigenpair of a dense Hermitian matrix (dimension <= 2^8). The
/// largest-magnitude amplitude of the returned vector is made real positive.
GroundState ground_state(const HermitianOperator& h);

}  // namespace qboost

#endif  // QBOOST_QSTATE_HPP
