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

#ifndef QBOOST_COMMON_HPP
#define QBOOST_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qboost {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

/// Numerical tolerances shared by all validity checks.
struct Tolerances {
  static constexpr double norm = 1e-10;
  static constexpr double hermitian = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double psd = -1e-9;
  static constexpr double imag_residue = 1e-9;
  static constexpr double eigen_residual = 1e-8;
  static constexpr double symmetrize = 1e-8;
  static constexpr double kraus_completeness = 1e-12;
  static constexpr double projector_orthogonality = 1e-12;
  static constexpr double weight_sum = 1e-12;
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or qubit counts do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix fails a structural invariant (Hermiticity, unit trace, unitarity).
class InvariantError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Bit position of `qubit` inside a basis index; qubit 0 is the most significant bit.
inline constexpr int bit_of(int qubit, int num_qubits) { return num_qubits - 1 - qubit; }

}  // namespace qboost

#endif  // QBOOST_COMMON_HPP
