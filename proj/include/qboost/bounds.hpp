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

#ifndef QBOOST_BOUNDS_HPP
#define QBOOST_BOUNDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <span>

namespace qboost {

/// exp(-2 sum_t (1/2 - eps_t)^2).
double training_bound(std::span<const double> epsilons);

/// 6 sqrt(K ln(7K) / n) + 2 sqrt(K / n).
double rademacher_bound(long long num_gates, long long num_samples);

/// ceil(pi K / eps)^K. Quotients within a relative 1e-12 of an integer are
/// treated as that integer so exact inputs such as eps = pi/2 are not
/// bumped up by rounding noise.
boost::multiprecision::cpp_int covering_number_bound(long long num_gates, double eps);

struct BoundInputs {
  long long num_gates = 1;      // K
  long long num_samples = 1;    // n
  double delta = 0.05;          // confidence parameter, in (0, 1]
  std::span<const double> epsilons;

  void validate() const;
};

struct RiskBound {
  double training = 0.0;    // exp(-2 sum (1/2 - eps)^2)
  double complexity = 0.0;  // 12 sqrt(K ln(7K) / n)
  double scale = 0.0;       // 4 sqrt(K / n)
  double confidence = 0.0;  // sqrt(ln(1/delta) / (2n))
  double total = 0.0;
};

RiskBound full_risk_bound(const BoundInputs& inputs);

}  // namespace qboost

#endif  // QBOOST_BOUNDS_HPP
