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

#ifndef QBOOST_TESTS_TEST_UTIL_HPP
#define QBOOST_TESTS_TEST_UTIL_HPP

#include "qboost/circuit.hpp"
#include "qboost/qstate.hpp"
#include "qboost/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qboost::testing {

inline StateVector random_state(Rng& rng, int n) {
  Vector v(static_cast<Eigen::Index>(dim_of(n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(rng.normal(), rng.normal());
  v.normalize();
  return StateVector(n, v);
}

inline DensityMatrix random_density(Rng& rng, int n, int rank = 3) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix a(d, rank);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, rho);
}

inline Matrix random_unitary(Rng& rng, int k) {
  const auto d = Eigen::Index{1} << k;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, d);
}

inline std::string random_pauli(Rng& rng, int len) {
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  do {
    s.clear();
    for (int i = 0; i < len; ++i) s.push_back(kLetters[rng.below(4)]);
  } while (s.find_first_not_of('I') == std::string::npos);
  return s;
}

/// Random mix of trainable/fixed rotations, CNOTs, fixed unitaries and
/// (optionally) a final pooling unit.
inline ParamCircuit random_circuit(Rng& rng, int n, int num_gates, bool with_pool = true) {
  CircuitBuilder b(n);
  for (int g = 0; g < num_gates; ++g) {
    const auto kind = rng.below(10);
    if (kind < 6) {
      const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - len + 1)));
      b.rotation(random_pauli(rng, len), start);
    } else if (kind < 7) {
      const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      b.fixed_rotation(random_pauli(rng, 1), start, rng.uniform_open(-3, 3));
    } else if (kind < 9 && n >= 2) {
      int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (t >= c) ++t;
      b.cnot(c, t);
    } else if (n >= 2) {
      const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      b.unitary(random_unitary(rng, 2), start);
    }
  }
  if (with_pool && n >= 2) b.pool(n - 1, n - 2, "XYZ"[rng.below(3)]);
  return std::move(b).build();
}

inline std::vector<double> random_theta(Rng& rng, int k) {
  std::vector<double> t(static_cast<std::size_t>(k));
  for (double& x : t) x = rng.uniform_open(-std::numbers::pi, std::numbers::pi);
  return t;
}

}  // namespace qboost::testing

#endif  // QBOOST_TESTS_TEST_UTIL_HPP
