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

#include "qboost/annni.hpp"

#include "qboost/circuit.hpp"
#include "qboost/parallel.hpp"
#include "qboost/rng.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <utility>

namespace qboost {

namespace {

Matrix term(const std::string& letters, int start, int n) {
  return embed_local_operator(PauliString(letters).matrix(), start, n);
}

}  // namespace

HermitianOperator annni_hamiltonian(int n, double kappa, double h) {
  if (n < 2 || n > 8) throw DomainError("annni_hamiltonian: need 2 <= N <= 8");
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix nn = Matrix::Zero(d, d), nnn = Matrix::Zero(d, d), field = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < n; ++i) nn += term("XX", i, n);
  for (int i = 0; i + 2 < n; ++i) nnn += term("XIX", i, n);
  for (int i = 0; i < n; ++i) field += term("Z", i, n);
  return HermitianOperator(n, -(nn - kappa * nnn + h * field));
}

double annni_ising_line(double k) {
  return ((1.0 - k) / k) * (1.0 - std::sqrt((1.0 - 3.0 * k + 4.0 * k * k) / (1.0 - k)));
}

double annni_ci_line(double k) { return 1.05 * std::sqrt((k - 0.5) * (k - 0.1)); }

double annni_critical_field(double k) { return k < 0.5 ? annni_ising_line(k) : annni_ci_line(k); }

int annni_label(double kappa, double h) { return h > annni_critical_field(kappa) ? 1 : -1; }

std::vector<AnnniPoint> generate_annni_dataset(int num_spins, std::size_t n, std::uint64_t seed) {
  if (num_spins < 2 || num_spins > 8) throw DomainError("generate_annni_dataset: need 2 <= N <= 8");
  std::vector<std::pair<double, double>> draws(n);
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng rng = Rng::derive(seed, Stream::kAnnniDraw, i, attempt);
      const double kappa = rng.uniform_open(0.0, 1.0);
      const double h = rng.uniform_open(0.0, 2.0);
      if (seen.insert({kappa, h}).second) {
        draws[i] = {kappa, h};
        break;
      }
    }
  }

  std::vector<std::optional<AnnniPoint>> slots(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto [kappa, h] = draws[static_cast<std::size_t>(i)];
    GroundState gs = ground_state(annni_hamiltonian(num_spins, kappa, h));
    slots[static_cast<std::size_t>(i)] = AnnniPoint{kappa, h, annni_label(kappa, h), std::move(gs.state)};
  }
  std::vector<AnnniPoint> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qboost
