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

#ifndef QBOOST_BOOST_HPP
#define QBOOST_BOOST_HPP

#include "qboost/learner.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qboost {

/// Circuit and readout for one base learner.
struct Model {
  ParamCircuit circuit;
  MeasurementSpec meas;
};

/// Builds the base model for a round (or bagging member) index.
using ModelFactory = std::function<Model(int)>;

enum class EnsembleMode { kBinary, kMulticlass };

struct Member {
  double alpha;
  BaseClassifier classifier;
};

struct Ensemble {
  EnsembleMode mode = EnsembleMode::kBinary;
  int num_classes = 2;
  std::vector<Member> members;

  LabelScheme scheme() const { return mode == EnsembleMode::kBinary ? LabelScheme::kBinary : LabelScheme::kMulticlass; }
};

/// Weighted vote. Binary: sign of sum alpha h with 0 -> +1. Multiclass:
/// argmax_d sum alpha [h = d], ties to the smallest class.
int ensemble_predict(const Ensemble& ens, const QuantumInput& state);
std::vector<int> ensemble_predict_all(const Ensemble& ens, std::span<const QuantumInput> states);

/// Vote over the first `prefix` members given their stored predictions
/// (member-major).
std::vector<int> combine_votes(EnsembleMode mode, int num_classes, std::span<const double> alphas,
                               const std::vector<std::vector<int>>& member_predictions, std::size_t prefix);

struct BoostConfig {
  TrainConfig train;
  int rounds = 10;
  int max_retries = 5;
  double epsilon_stop = 1e-12;
  double epsilon_clamp = 1e-12;
  std::uint64_t seed = 0;
};

struct RoundRecord {
  int round = 0;  // 1-based
  double epsilon = 0.0;
  double alpha = 0.0;
  double z = 0.0;                 // binary normaliser; NaN for multiclass
  double train_error = 0.0;       // unweighted error of the ensemble so far
  double train_bound = 0.0;       // exp(-2 sum (1/2 - eps)^2); NaN for multiclass
  double redistributed_error = 0.0;  // weighted error of h_t under D_{t+1}
  int attempts = 1;
  int best_iteration = 0;
  std::vector<double> next_weights;
  std::vector<HistoryRow> history;  // training run of the accepted attempt
};

struct BoostReport {
  std::vector<RoundRecord> rounds;
  bool weak_learner_failure = false;
  std::string failure_message;
  bool early_stopped = false;

  std::vector<double> epsilons() const;
};

struct BoostResult {
  Ensemble ensemble;
  BoostReport report;
  /// Predictions of every member on the training set, member-major.
  std::vector<std::vector<int>> train_predictions;
};

/// Closed forms used by the two algorithms (eps clamped from below).
double binary_alpha(double eps, double clamp = 1e-12);
double binary_z(double eps, double clamp = 1e-12);
double multiclass_alpha(double eps, int num_classes, double clamp = 1e-12);

/// Weight updates. Both return normalised distributions.
std::vector<double> binary_reweight(std::span<const double> weights, std::span<const int> labels,
                                    std::span<const int> predictions, double alpha, double z);
std::vector<double> multiclass_reweight(std::span<const double> weights, std::span<const int> labels,
                                        std::span<const int> predictions, double alpha);

/// Called after each accepted round with the ensemble so far.
using RoundCallback = std::function<void(const Ensemble&, const RoundRecord&)>;

/// Binary AdaBoost. A round whose best checkpoint has eps >= 1/2 is retried
/// with fresh initialisations; after max_retries failures boosting stops and
/// the report carries the weak-learner-failure flag.
BoostResult boost_binary(const WeightedDataset& data, const ModelFactory& factory, const BoostConfig& config,
                         const NoiseModel* noise = nullptr, const RoundCallback& on_round = {});

/// D-class AdaBoost with threshold (D-1)/D.
BoostResult boost_multiclass(const WeightedDataset& data, const ModelFactory& factory, const BoostConfig& config,
                             const NoiseModel* noise = nullptr, const RoundCallback& on_round = {});

/// Bootstrap indices for bagging member `member`: n draws with replacement.
std::vector<std::size_t> bootstrap_indices(std::uint64_t seed, int member, std::size_t n);

/// Unweighted majority vote over members trained on bootstrap resamples.
/// A resample is represented by count weights on the shared sample set.
Ensemble bagging(const WeightedDataset& data, const ModelFactory& factory, const TrainConfig& train, int members,
                 std::uint64_t seed, const NoiseModel* noise = nullptr);

void write_rounds_csv(std::ostream& out, const BoostReport& report);

}  // namespace qboost

#endif  // QBOOST_BOOST_HPP
