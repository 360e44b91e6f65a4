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

#include "qboost/noise.hpp"

#include "qboost/kernels.hpp"

#include <cmath>

namespace qboost {

namespace {

void check_rate(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError(std::string(what) + ": rate must lie in [0, 1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix2> ops, std::string name)
    : ops_(std::move(ops)), name_(std::move(name)) {
  if (ops_.empty()) throw DomainError("KrausChannel: no operators");
  Matrix2 sum = Matrix2::Zero();
  for (const auto& e : ops_) sum += e.adjoint() * e;
  if ((sum - Matrix2::Identity()).cwiseAbs().maxCoeff() > Tolerances::kraus_completeness)
    throw InvariantError("KrausChannel: sum of E^dagger E is not the identity");

  super_.setZero();
  adjoint_.setZero();
  for (const auto& e : ops_)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            super_(2 * i + j, 2 * a + b) += e(i, a) * std::conj(e(j, b));
            adjoint_(2 * i + j, 2 * a + b) += std::conj(e(a, i)) * e(b, j);
          }
}

bool KrausChannel::is_identity() const {
  Matrix4 id = Matrix4::Identity();
  return super_ == id;
}

KrausChannel identity_channel() { return KrausChannel({Matrix2::Identity()}, "identity"); }

KrausChannel depolarizing(double p) {
  check_rate(p, "depolarizing");
  return KrausChannel({std::sqrt(1.0 - 0.75 * p) * pauli::identity(), std::sqrt(p / 4) * pauli::x(),
                       std::sqrt(p / 4) * pauli::y(), std::sqrt(p / 4) * pauli::z()},
                      "depolarizing");
}

KrausChannel amplitude_damping(double gamma) {
  check_rate(gamma, "amplitude_damping");
  Matrix2 e0, e1;
  e0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  e1 << 0, std::sqrt(gamma), 0, 0;
  return KrausChannel({e0, e1}, "amp-damp");
}

KrausChannel phase_damping(double lambda) {
  check_rate(lambda, "phase_damping");
  Matrix2 e0, e1;
  e0 << 1, 0, 0, std::sqrt(1.0 - lambda);
  e1 << 0, 0, 0, std::sqrt(lambda);
  return KrausChannel({e0, e1}, "phase-damp");
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& state, int qubit) {
  const int n = state.num_qubits();
  if (qubit < 0 || qubit >= n) throw DomainError("apply_channel: qubit out of range");
  Matrix out = state.matrix();
  kernels::dm_superop(out.data(), n, bit_of(qubit, n), ch.superoperator());
  return trusted_density(n, std::move(out));
}

NoiseKind parse_noise_kind(const std::string& text) {
  if (text == "none") return NoiseKind::kNone;
  if (text == "depolarizing") return NoiseKind::kDepolarizing;
  if (text == "amp-damp") return NoiseKind::kAmplitudeDamping;
  if (text == "phase-damp") return NoiseKind::kPhaseDamping;
  throw DomainError("unknown noise kind '" + text + "' (none|depolarizing|amp-damp|phase-damp)");
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kDepolarizing: return "depolarizing";
    case NoiseKind::kAmplitudeDamping: return "amp-damp";
    case NoiseKind::kPhaseDamping: return "phase-damp";
  }
  return "none";
}

std::optional<NoiseModel> make_noise_model(NoiseKind kind, double rate) {
  switch (kind) {
    case NoiseKind::kNone: return std::nullopt;
    case NoiseKind::kDepolarizing: return NoiseModel{depolarizing(rate)};
    case NoiseKind::kAmplitudeDamping: return NoiseModel{amplitude_damping(rate)};
    case NoiseKind::kPhaseDamping: return NoiseModel{phase_damping(rate)};
  }
  return std::nullopt;
}

}  // namespace qboost
