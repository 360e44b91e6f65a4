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

#include "qboost/qstate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace qboost {

namespace {

void check_square_dim(int num_qubits, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (num_qubits < 0 || num_qubits > 16)
    throw DimensionError(std::string(what) + ": unsupported qubit count");
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  if (rows != d || cols != d)
    throw DimensionError(std::string(what) + ": matrix is not 2^N x 2^N");
}

}  // namespace

StateVector::StateVector(int num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 0 || num_qubits > 16) throw DimensionError("StateVector: unsupported qubit count");
  if (static_cast<std::size_t>(amps_.size()) != dim_of(num_qubits))
    throw DimensionError("StateVector: length is not 2^N");
  if (std::abs(amps_.norm() - 1.0) > Tolerances::norm)
    throw InvariantError("StateVector: amplitudes are not unit norm");
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  if (index >= dim_of(num_qubits)) throw DomainError("StateVector::basis: index out of range");
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(num_qubits, std::move(v));
}

StateVector trusted_state(int num_qubits, Vector amplitudes) {
  return StateVector(StateVector::Unchecked{}, num_qubits, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(int num_qubits, Matrix matrix)
    : num_qubits_(num_qubits), m_(std::move(matrix)) {
  check_square_dim(num_qubits, m_.rows(), m_.cols(), "DensityMatrix");
  if (hermiticity_residue(m_) > Tolerances::hermitian)
    throw InvariantError("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > Tolerances::trace)
    throw InvariantError("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < Tolerances::psd)
    throw InvariantError("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return trusted_density(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::basis(int num_qubits, std::size_t index) {
  return from_pure(StateVector::basis(num_qubits, index));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  return trusted_density(num_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix trusted_density(int num_qubits, Matrix matrix) {
  return DensityMatrix(DensityMatrix::Unchecked{}, num_qubits, std::move(matrix));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

HermitianOperator::HermitianOperator(int num_qubits, Matrix matrix)
    : num_qubits_(num_qubits), m_(std::move(matrix)) {
  check_square_dim(num_qubits, m_.rows(), m_.cols(), "HermitianOperator");
  if (hermiticity_residue(m_) > Tolerances::hermitian)
    throw InvariantError("HermitianOperator: not Hermitian");
}

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}
Matrix2 y() {
  Matrix2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}
Matrix2 letter(char c) {
  switch (c) {
    case 'I': return identity();
    case 'X': return x();
    case 'Y': return y();
    case 'Z': return z();
    default: throw DomainError(std::string("unknown Pauli letter '") + c + "'");
  }
}
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermiticity_residue(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double expectation(const HermitianOperator& op, const DensityMatrix& state) {
  if (op.num_qubits() != state.num_qubits()) throw DimensionError("expectation: qubit counts differ");
  const cplx t = (op.matrix() * state.matrix()).trace();
  if (std::abs(t.imag()) > Tolerances::imag_residue)
    throw InvariantError("expectation: imaginary residue above tolerance");
  return t.real();
}

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw DomainError("partial_trace: empty keep set");
  std::set<int> kept(keep.begin(), keep.end());
  if (kept.size() != keep.size()) throw DomainError("partial_trace: repeated qubit index");
  for (int q : kept)
    if (q < 0 || q >= n) throw DomainError("partial_trace: qubit index out of range");

  std::vector<int> keep_sorted(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept.count(q)) traced.push_back(q);
  const int k = static_cast<int>(keep_sorted.size());

  // Scatter a local index (over a qubit list) into a full basis index.
  auto scatter = [n](std::size_t local, const std::vector<int>& qubits) {
    std::size_t full = 0;
    const int m = static_cast<int>(qubits.size());
    for (int j = 0; j < m; ++j)
      if ((local >> (m - 1 - j)) & 1U) full |= std::size_t{1} << bit_of(qubits[j], n);
    return full;
  };

  const std::size_t dk = dim_of(k);
  const std::size_t dt = dim_of(n - k);
  std::vector<std::size_t> keep_idx(dk), trace_idx(dt);
  for (std::size_t a = 0; a < dk; ++a) keep_idx[a] = scatter(a, keep_sorted);
  for (std::size_t e = 0; e < dt; ++e) trace_idx[e] = scatter(e, traced);

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  const Matrix& m = state.matrix();
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (std::size_t e = 0; e < dt; ++e)
        acc += m(static_cast<Eigen::Index>(keep_idx[a] | trace_idx[e]),
                 static_cast<Eigen::Index>(keep_idx[b] | trace_idx[e]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return trusted_density(k, std::move(out));
}

Matrix embed_local_operator(const Matrix& local, int start_qubit, int total_qubits) {
  if (local.rows() != local.cols() || local.rows() < 2)
    throw DimensionError("embed_local_operator: local operator is not square");
  int k = 0;
  while ((Eigen::Index{1} << k) < local.rows()) ++k;
  if ((Eigen::Index{1} << k) != local.rows())
    throw DimensionError("embed_local_operator: local dimension is not a power of two");
  if (start_qubit < 0 || start_qubit + k > total_qubits)
    throw DomainError("embed_local_operator: operator does not fit in the register");
  const auto left = static_cast<Eigen::Index>(dim_of(start_qubit));
  const auto right = static_cast<Eigen::Index>(dim_of(total_qubits - start_qubit - k));
  return kron(kron(Matrix::Identity(left, left), local), Matrix::Identity(right, right));
}

GroundState ground_state(const HermitianOperator& h) {
  if (h.num_qubits() > 8) throw DimensionError("ground_state: dense solve limited to 8 qubits");
  const Matrix& m = h.matrix();
  if (hermiticity_residue(m) > Tolerances::symmetrize)
    throw InvariantError("ground_state: input is not Hermitian");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw Error("ground_state: eigensolver did not converge");
  Vector v = es.eigenvectors().col(0);
  const double energy = es.eigenvalues()[0];

  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const cplx pivot = v[arg];
  v *= std::conj(pivot) / std::abs(pivot);
  v[arg] = std::abs(v[arg]);
  v.normalize();
  return {energy, trusted_state(h.num_qubits(), std::move(v))};
}

}  // namespace qboost
