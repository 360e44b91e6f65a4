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

#ifndef QBOOST_LEARNER_HPP
#define QBOOST_LEARNER_HPP

#include "qboost/circuit.hpp"
#include "qboost/kernels.hpp"
#include "qboost/noise.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace qboost {

/// Binary labels are -1/+1; multiclass labels are 1..D.
enum class LabelScheme { kBinary, kMulticlass };

/// Readout outcome index that stands for `label`. Binary +1 is outcome 0.
int outcome_of(int label, LabelScheme scheme);
int label_of(int outcome, LabelScheme scheme);

using SampleSet = std::shared_ptr<const std::vector<QuantumInput>>;

/// Samples, labels and a boosting distribution over them. The sample set is
/// shared, so reweighting is cheap. Weights are renormalized to sum to 1.
class WeightedDataset {
 public:
  /// Empty `weights` means uniform.
  WeightedDataset(SampleSet samples, std::vector<int> labels, LabelScheme scheme, int num_classes,
                  std::vector<double> weights = {});

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<QuantumInput>& samples() const { return *samples_; }
  const SampleSet& sample_set() const { return samples_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }
  LabelScheme scheme() const { return scheme_; }
  int num_classes() const { return num_classes_; }

  WeightedDataset with_weights(std::vector<double> weights) const;

 private:
  SampleSet samples_;
  std::vector<int> labels_;
  LabelScheme scheme_;
  int num_classes_;
  std::vector<double> weights_;
};

struct TrainConfig {
  double learning_rate = 0.05;
  int iterations = 120;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t init_seed = 0;
  double prob_floor = 1e-10;

  void validate() const;
};

struct BaseClassifier {
  ParamCircuit circuit;
  std::vector<double> theta;
  MeasurementSpec meas;
  std::optional<NoiseModel> noise;
  LabelScheme scheme = LabelScheme::kMulticlass;

  const NoiseModel* noise_ptr() const { return noise ? &*noise : nullptr; }
};

/// Argmax of p with ties broken towards the smallest index.
int argmax_outcome(std::span<const double> p);

int predict(const BaseClassifier& clf, const QuantumInput& state);
std::vector<int> predict_all(const BaseClassifier& clf, std::span<const QuantumInput> states);

/// -sum_i D(i) log p_{i, y_i}, with p clamped to [prob_floor, 1].
double cross_entropy_loss(std::span<const double> theta, const ParamCircuit& circuit, const MeasurementSpec& meas,
                          const WeightedDataset& data, const NoiseModel* noise = nullptr,
                          double prob_floor = 1e-10);

double weighted_error(const BaseClassifier& clf, const WeightedDataset& data);
double weighted_error(std::span<const int> predictions, const WeightedDataset& data);

struct LossEvaluation {
  double loss = 0.0;
  std::vector<double> gradient;
  std::vector<std::vector<double>> probabilities;
};

/// Loss, its parameter-shift gradient and the per-sample probabilities in one
/// pass. Each shift-rule term is evaluated exactly through adjoint propagation.
LossEvaluation evaluate_loss(std::span<const double> theta, const ParamCircuit& circuit, const MeasurementSpec& meas,
                             const WeightedDataset& data, const NoiseModel* noise, double prob_floor,
                             bool with_gradient = true);

std::vector<double> param_shift_gradient(std::span<const double> theta, const ParamCircuit& circuit,
                                         const MeasurementSpec& meas, const WeightedDataset& data,
                                         const NoiseModel* noise = nullptr, double prob_floor = 1e-10);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  int step = 0;
};

void adam_step(std::vector<double>& theta, std::span<const double> grad, AdamState& state, const TrainConfig& config);

struct HistoryRow {
  int iteration;
  double loss;
  double weighted_error;
};

struct TrainResult {
  BaseClassifier classifier;
  std::vector<HistoryRow> history;
  int best_iteration = 0;
  double best_error = 1.0;
};

/// Called with (iteration, theta) for every candidate checkpoint.
using IterationCallback = std::function<void(int, std::span<const double>)>;

/// Standard-normal init from config.init_seed, then `iterations` Adam steps.
/// Candidates are the initial point and the point after every step; the one
/// with least weighted error wins, earliest on ties.
TrainResult train_base(const ParamCircuit& circuit, const MeasurementSpec& meas, const WeightedDataset& data,
                       const TrainConfig& config, const NoiseModel* noise = nullptr,
                       const IterationCallback& on_iteration = {});

void write_history_csv(std::ostream& out, std::span<const HistoryRow> history);

}  // namespace qboost

#endif  // QBOOST_LEARNER_HPP
