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

#ifndef QBOOST_NOISE_HPP
#define QBOOST_NOISE_HPP

#include "qboost/common.hpp"
#include "qboost/qstate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qboost {

/// Single-qubit CPTP map rho -> sum_k E_k rho E_k^dagger.
class KrausChannel {
 public:
  /// Throws InvariantError unless sum_k E_k^dagger E_k = I within 1e-12.
  explicit KrausChannel(std::vector<Matrix2> ops, std::string name = "custom");

  const std::vector<Matrix2>& ops() const { return ops_; }
  const std::string& name() const { return name_; }

  /// Acts on a 2x2 block vectorised as (m00, m01, m10, m11).
  const Matrix4& superoperator() const { return super_; }
  /// Heisenberg-picture map O -> sum_k E_k^dagger O E_k in the same layout.
  const Matrix4& adjoint_superoperator() const { return adjoint_; }

  /// True when the channel is exactly the identity map (e.g. rate 0).
  bool is_identity() const;

 private:
  std::vector<Matrix2> ops_;
  std::string name_;
  Matrix4 super_;
  Matrix4 adjoint_;
};

KrausChannel identity_channel();
/// (p/2) I + (1-p) rho, stored as {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
KrausChannel depolarizing(double p);
KrausChannel amplitude_damping(double gamma);
KrausChannel phase_damping(double lambda);

/// Applies `ch` to `qubit`, leaving the other qubits alone.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& state, int qubit);

enum class NoiseKind { kNone, kDepolarizing, kAmplitudeDamping, kPhaseDamping };

NoiseKind parse_noise_kind(const std::string& text);
std::string to_string(NoiseKind kind);

/// Noise attached to every multi-qubit gate application: the channel acts on
/// each touched qubit right after the ideal gate.
struct NoiseModel {
  KrausChannel two_qubit_gate_channel;
  bool enabled = true;
  /// Whether pooling units count as noisy two-qubit operations.
  bool noisy_pooling = true;

  /// False when disabled or when the channel is exactly the identity.
  bool active() const { return enabled && !two_qubit_gate_channel.is_identity(); }
};

/// Default rate 0.03 for every channel kind.
inline constexpr double kDefaultNoiseRate = 0.03;

std::optional<NoiseModel> make_noise_model(NoiseKind kind, double rate = kDefaultNoiseRate);

}  // namespace qboost

#endif  // QBOOST_NOISE_HPP
