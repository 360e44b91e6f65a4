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

#include "qboost/bounds.hpp"

#include "qboost/common.hpp"

#include <cmath>
#include <numbers>

namespace qboost {

double training_bound(std::span<const double> epsilons) {
  double s = 0.0;
  for (double e : epsilons) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("training_bound: epsilon outside [0, 1]");
    s += (0.5 - e) * (0.5 - e);
  }
  return std::exp(-2.0 * s);
}

double rademacher_bound(long long num_gates, long long num_samples) {
  if (num_gates < 1 || num_samples < 1) throw DomainError("rademacher_bound: K and n must be positive");
  const double k = static_cast<double>(num_gates);
  const double n = static_cast<double>(num_samples);
  return 6.0 * std::sqrt(k * std::log(7.0 * k) / n) + 2.0 * std::sqrt(k / n);
}

boost::multiprecision::cpp_int covering_number_bound(long long num_gates, double eps) {
  if (!(eps > 0.0)) throw DomainError("covering_number_bound: eps must be positive");
  if (num_gates < 1) throw DomainError("covering_number_bound: K must be positive");
  const double x = std::numbers::pi * static_cast<double>(num_gates) / eps;
  if (!std::isfinite(x)) throw DomainError("covering_number_bound: quotient overflows");
  const double nearest = std::round(x);
  const double c = std::abs(x - nearest) <= 1e-12 * std::max(1.0, std::abs(x)) ? nearest : std::ceil(x);
  boost::multiprecision::cpp_int base(c);
  if (base < 1) base = 1;
  return boost::multiprecision::pow(base, static_cast<unsigned>(num_gates));
}

void BoundInputs::validate() const {
  if (num_gates < 1 || num_samples < 1) throw DomainError("BoundInputs: K and n must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("BoundInputs: delta must lie in (0, 1]");
}

RiskBound full_risk_bound(const BoundInputs& in) {
  in.validate();
  const double k = static_cast<double>(in.num_gates);
  const double n = static_cast<double>(in.num_samples);
  RiskBound r;
  r.training = training_bound(in.epsilons);
  r.complexity = 12.0 * std::sqrt(k * std::log(7.0 * k) / n);
  r.scale = 4.0 * std::sqrt(k / n);
  r.confidence = std::sqrt(std::log(1.0 / in.delta) / (2.0 * n));
  r.total = r.training + r.complexity + r.scale + r.confidence;
  return r;
}

}  // namespace qboost
