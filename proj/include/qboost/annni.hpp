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

#ifndef QBOOST_ANNNI_HPP
#define QBOOST_ANNNI_HPP

#include "qboost/qstate.hpp"

#include <cstdint>
#include <vector>

namespace qboost {

/// H = -(sum X_i X_{i+1} - kappa sum X_i X_{i+2} + h sum Z_i), open chain.
HermitianOperator annni_hamiltonian(int num_spins, double kappa, double h);

/// Ising-like critical line, kappa < 1/2.
double annni_ising_line(double kappa);
/// Commensurate-incommensurate line, kappa >= 1/2.
double annni_ci_line(double kappa);
/// Critical field at kappa; kappa = 1/2 uses the second line.
double annni_critical_field(double kappa);

/// +1 (paramagnetic) iff h lies above the critical line.
int annni_label(double kappa, double h);

struct AnnniPoint {
  double kappa;
  double h;
  int label;
  StateVector state;
};

/// n distinct uniform draws of (kappa, h) in (0,1) x (0,2) and their ground
/// states. Draw i uses its own substream, so the result does not depend on
/// how the ground states are scheduled.
std::vector<AnnniPoint> generate_annni_dataset(int num_spins, std::size_t n, std::uint64_t seed);

}  // namespace qboost

#endif  // QBOOST_ANNNI_HPP
