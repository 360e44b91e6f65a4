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

#include "qboost/learner.hpp"

#include "qboost/csv.hpp"
#include "qboost/rng.hpp"
#include "qboost/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace qboost {

int outcome_of(int label, LabelScheme scheme) {
  if (scheme == LabelScheme::kBinary) {
    if (label != 1 && label != -1) throw DomainError("binary labels must be +1 or -1");
    return label == 1 ? 0 : 1;
  }
  if (label < 1) throw DomainError("multiclass labels start at 1");
  return label - 1;
}

int label_of(int outcome, LabelScheme scheme) {
  if (scheme == LabelScheme::kBinary) return outcome == 0 ? 1 : -1;
  return outcome + 1;
}

namespace {

std::vector<double> normalized(std::vector<double> w, std::size_t n) {
  if (w.empty()) return std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  if (w.size() != n) throw DimensionError("weight count does not match sample count");
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("weights must be finite and nonnegative");
    sum += x;
  }
  if (!(sum > 0.0)) throw DomainError("weights sum to zero");
  for (double& x : w) x /= sum;
  return w;
}

void check_weights(const WeightedDataset& data) {
  const double s = std::accumulate(data.weights().begin(), data.weights().end(), 0.0);
  if (!data.empty() && std::abs(s - 1.0) > Tolerances::weight_sum) throw InvariantError("weights do not sum to 1");
}

}  // namespace

WeightedDataset::WeightedDataset(SampleSet samples, std::vector<int> labels, LabelScheme scheme, int num_classes,
                                 std::vector<double> weights)
    : samples_(std::move(samples)), labels_(std::move(labels)), scheme_(scheme), num_classes_(num_classes) {
  if (!samples_) throw DomainError("WeightedDataset: null sample set");
  if (samples_->size() != labels_.size()) throw DimensionError("WeightedDataset: label count");
  if (scheme_ == LabelScheme::kBinary && num_classes_ != 2) throw DomainError("WeightedDataset: binary needs 2 classes");
  if (num_classes_ < 2) throw DomainError("WeightedDataset: need at least two classes");
  for (int y : labels_)
    if (outcome_of(y, scheme_) >= num_classes_) throw DomainError("WeightedDataset: label out of range");
  weights_ = normalized(std::move(weights), labels_.size());
}

WeightedDataset WeightedDataset::with_weights(std::vector<double> weights) const {
  return WeightedDataset(samples_, labels_, scheme_, num_classes_, std::move(weights));
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw DomainError("learning_rate must be positive");
  if (iterations < 1) throw DomainError("iterations must be at least 1");
  if (!(prob_floor > 0.0 && prob_floor < 1.0)) throw DomainError("prob_floor must lie in (0, 1)");
}

int argmax_outcome(std::span<const double> p) {
  int best = 0;
  for (std::size_t d = 1; d < p.size(); ++d)
    if (p[d] > p[static_cast<std::size_t>(best)]) best = static_cast<int>(d);
  return best;
}

int predict(const BaseClassifier& clf, const QuantumInput& state) {
  const auto p = outcome_probabilities(clf.circuit, clf.theta, state, clf.meas, clf.noise_ptr());
  return label_of(argmax_outcome(p), clf.scheme);
}

std::vector<int> predict_all(const BaseClassifier& clf, std::span<const QuantumInput> states) {
  const auto prog = compile_for(clf.circuit, clf.theta, clf.meas, clf.noise_ptr());
  const auto probs = kernels::batch_probabilities(prog, states, clf.meas);
  std::vector<int> out;
  out.reserve(probs.size());
  for (const auto& p : probs) out.push_back(label_of(argmax_outcome(p), clf.scheme));
  return out;
}

double weighted_error(std::span<const int> predictions, const WeightedDataset& data) {
  if (predictions.size() != data.size()) throw DimensionError("prediction count");
  double e = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] != data.labels()[i]) e += data.weights()[i];
  return std::clamp(e, 0.0, 1.0);
}

double weighted_error(const BaseClassifier& clf, const WeightedDataset& data) {
  const auto pred = predict_all(clf, data.samples());
  return weighted_error(pred, data);
}

LossEvaluation evaluate_loss(std::span<const double> theta, const ParamCircuit& circuit, const MeasurementSpec& meas,
                             const WeightedDataset& data, const NoiseModel* noise, double prob_floor,
                             bool with_gradient) {
  check_weights(data);
  if (meas.num_classes() != data.num_classes()) throw DimensionError("readout classes do not match the labels");
  const auto prog = compile_for(circuit, theta, meas, noise);
  const auto& w = data.weights();
  const auto& y = data.labels();
  const LabelScheme scheme = data.scheme();

  LossEvaluation ev;
  ev.gradient.assign(theta.size(), 0.0);
  if (with_gradient) {
    auto coeffs = [&](std::size_t i, std::span<const double> p) {
      std::vector<double> c(p.size(), 0.0);
      const auto d = static_cast<std::size_t>(outcome_of(y[i], scheme));
      c[d] = -w[i] / std::clamp(p[d], prob_floor, 1.0);
      return c;
    };
    ev.probabilities = kernels::batch_probabilities_and_gradient(prog, data.samples(), meas, coeffs, ev.gradient);
  } else {
    ev.probabilities = kernels::batch_probabilities(prog, data.samples(), meas);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto d = static_cast<std::size_t>(outcome_of(y[i], scheme));
    ev.loss -= w[i] * std::log(std::clamp(ev.probabilities[i][d], prob_floor, 1.0));
  }
  return ev;
}

double cross_entropy_loss(std::span<const double> theta, const ParamCircuit& circuit, const MeasurementSpec& meas,
                          const WeightedDataset& data, const NoiseModel* noise, double prob_floor) {
  return evaluate_loss(theta, circuit, meas, data, noise, prob_floor, false).loss;
}

std::vector<double> param_shift_gradient(std::span<const double> theta, const ParamCircuit& circuit,
                                         const MeasurementSpec& meas, const WeightedDataset& data,
                                         const NoiseModel* noise, double prob_floor) {
  return evaluate_loss(theta, circuit, meas, data, noise, prob_floor, true).gradient;
}

void adam_step(std::vector<double>& theta, std::span<const double> grad, AdamState& state, const TrainConfig& config) {
  if (grad.size() != theta.size()) throw DimensionError("adam_step: gradient length");
  if (state.m.empty()) {
    state.m.assign(theta.size(), 0.0);
    state.v.assign(theta.size(), 0.0);
  }
  ++state.step;
  const double b1 = config.adam_beta1, b2 = config.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, state.step);
  const double c2 = 1.0 - std::pow(b2, state.step);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    state.m[k] = b1 * state.m[k] + (1.0 - b1) * grad[k];
    state.v[k] = b2 * state.v[k] + (1.0 - b2) * grad[k] * grad[k];
    const double mhat = state.m[k] / c1;
    const double vhat = state.v[k] / c2;
    theta[k] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.adam_eps);
  }
}

TrainResult train_base(const ParamCircuit& circuit, const MeasurementSpec& meas, const WeightedDataset& data,
                       const TrainConfig& config, const NoiseModel* noise, const IterationCallback& on_iteration) {
  config.validate();
  if (data.empty()) throw DomainError("train_base: empty dataset");

  Rng rng = Rng::derive(config.init_seed, Stream::kInit);
  std::vector<double> theta(static_cast<std::size_t>(circuit.num_params()));
  for (double& t : theta) t = rng.normal();

  TrainResult result{BaseClassifier{circuit, theta, meas, noise ? std::optional<NoiseModel>(*noise) : std::nullopt,
                                    data.scheme()},
                     {},
                     0,
                     2.0};
  const int last = theta.empty() ? 0 : config.iterations;
  AdamState adam;
  std::vector<int> pred(data.size());
  for (int it = 0; it <= last; ++it) {
    LossEvaluation ev = evaluate_loss(theta, circuit, meas, data, noise, config.prob_floor, it < last);
    for (std::size_t i = 0; i < data.size(); ++i) pred[i] = label_of(argmax_outcome(ev.probabilities[i]), data.scheme());
    const double eps = weighted_error(pred, data);
    result.history.push_back({it, ev.loss, eps});
    if (on_iteration) on_iteration(it, theta);
    if (eps < result.best_error) {
      result.best_error = eps;
      result.best_iteration = it;
      result.classifier.theta = theta;
    }
    if (it < last) adam_step(theta, ev.gradient, adam, config);
  }
  return result;
}

void write_history_csv(std::ostream& out, std::span<const HistoryRow> history) {
  out << "iteration,loss,weighted_error\n";
  for (const auto& r : history) out << r.iteration << ',' << csv::num(r.loss) << ',' << csv::num(r.weighted_error) << '\n';
}

}  // namespace qboost
