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

#include "qboost/boost.hpp"

#include "qboost/bounds.hpp"
#include "qboost/csv.hpp"
#include "qboost/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace qboost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t member_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return Rng::derive(seed, Stream::kInit, a, b, c).next_u64();
}

double unweighted_error(std::span<const int> pred, std::span<const int> labels) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) wrong += pred[i] != labels[i];
  return pred.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(pred.size());
}

double mass_wrong(std::span<const double> w, std::span<const int> labels, std::span<const int> pred) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (pred[i] != labels[i]) s += w[i];
  return s;
}

std::vector<double> normalise(std::vector<double> w) {
  double s = 0.0;
  for (double x : w) s += x;
  for (double& x : w) x /= s;
  return w;
}

int vote(EnsembleMode mode, int num_classes, std::span<const double> alphas, std::span<const int> labels) {
  if (mode == EnsembleMode::kBinary) {
    double f = 0.0;
    for (std::size_t t = 0; t < labels.size(); ++t) f += alphas[t] * labels[t];
    return f >= 0.0 ? 1 : -1;
  }
  std::vector<double> score(static_cast<std::size_t>(num_classes), 0.0);
  for (std::size_t t = 0; t < labels.size(); ++t) score[static_cast<std::size_t>(labels[t] - 1)] += alphas[t];
  return 1 + argmax_outcome(score);
}

enum class Algorithm { kBinary, kMulticlass };

BoostResult run_boost(Algorithm algo, const WeightedDataset& data, const ModelFactory& factory,
                      const BoostConfig& config, const NoiseModel* noise, const RoundCallback& on_round) {
  if (data.empty()) throw DomainError("boosting needs a nonempty dataset");
  if (config.rounds < 1) throw DomainError("boosting needs at least one round");
  const bool binary = algo == Algorithm::kBinary;
  if (binary && data.scheme() != LabelScheme::kBinary) throw DomainError("boost_binary needs +1/-1 labels");
  if (!binary && data.scheme() != LabelScheme::kMulticlass) throw DomainError("boost_multiclass needs labels 1..D");
  const int num_classes = data.num_classes();
  const double threshold = binary ? 0.5 : static_cast<double>(num_classes - 1) / num_classes;

  BoostResult res;
  res.ensemble.mode = binary ? EnsembleMode::kBinary : EnsembleMode::kMulticlass;
  res.ensemble.num_classes = num_classes;
  std::vector<double> weights = data.weights();
  std::vector<double> alphas;
  std::vector<double> eps_so_far;

  for (int t = 1; t <= config.rounds; ++t) {
    const WeightedDataset round_data = data.with_weights(weights);
    std::optional<TrainResult> accepted;
    int attempts = 0;
    double last_eps = 1.0;
    for (int attempt = 0; attempt <= config.max_retries && !accepted; ++attempt) {
      ++attempts;
      const Model model = factory(t);
      TrainConfig tc = config.train;
      tc.init_seed = member_seed(config.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(attempt), 0);
      TrainResult tr = train_base(model.circuit, model.meas, round_data, tc, noise);
      last_eps = tr.best_error;
      if (tr.best_error < threshold) accepted = std::move(tr);
    }
    if (!accepted) {
      res.report.weak_learner_failure = true;
      res.report.failure_message = "round " + std::to_string(t) + ": no weak learner after " +
                                   std::to_string(attempts) + " attempts (best eps " + csv::num(last_eps) + ")";
      break;
    }

    RoundRecord rec;
    rec.round = t;
    rec.attempts = attempts;
    rec.best_iteration = accepted->best_iteration;
    rec.history = accepted->history;
    const std::vector<int> pred = predict_all(accepted->classifier, data.samples());
    rec.epsilon = weighted_error(pred, round_data);
    std::vector<double> next;
    if (binary) {
      rec.alpha = binary_alpha(rec.epsilon, config.epsilon_clamp);
      rec.z = binary_z(rec.epsilon, config.epsilon_clamp);
      next = binary_reweight(weights, data.labels(), pred, rec.alpha, rec.z);
    } else {
      rec.alpha = multiclass_alpha(rec.epsilon, num_classes, config.epsilon_clamp);
      rec.z = kNaN;
      next = multiclass_reweight(weights, data.labels(), pred, rec.alpha);
    }
    rec.redistributed_error = mass_wrong(next, data.labels(), pred);

    res.ensemble.members.push_back({rec.alpha, std::move(accepted->classifier)});
    res.train_predictions.push_back(pred);
    alphas.push_back(rec.alpha);
    eps_so_far.push_back(rec.epsilon);
    const auto ens_pred =
        combine_votes(res.ensemble.mode, num_classes, alphas, res.train_predictions, res.train_predictions.size());
    rec.train_error = unweighted_error(ens_pred, data.labels());
    rec.train_bound = binary ? training_bound(eps_so_far) : kNaN;
    rec.next_weights = next;
    res.report.rounds.push_back(rec);
    if (on_round) on_round(res.ensemble, res.report.rounds.back());

    weights = std::move(next);
    if (rec.epsilon < config.epsilon_stop) {
      res.report.early_stopped = true;
      break;
    }
  }
  return res;
}

}  // namespace

std::vector<double> BoostReport::epsilons() const {
  std::vector<double> e;
  for (const auto& r : rounds) e.push_back(r.epsilon);
  return e;
}

double binary_alpha(double eps, double clamp) {
  const double e = std::max(eps, clamp);
  return 0.5 * std::log((1.0 - e) / e);
}

double binary_z(double eps, double clamp) {
  const double e = std::max(eps, clamp);
  return 2.0 * std::sqrt(e * (1.0 - e));
}

double multiclass_alpha(double eps, int num_classes, double clamp) {
  if (num_classes < 2) throw DomainError("multiclass_alpha: need at least two classes");
  const double e = std::max(eps, clamp);
  return std::log((1.0 - e) / e) + std::log(static_cast<double>(num_classes - 1));
}

std::vector<double> binary_reweight(std::span<const double> weights, std::span<const int> labels,
                                    std::span<const int> predictions, double alpha, double z) {
  std::vector<double> next(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    next[i] = weights[i] * std::exp(-alpha * labels[i] * predictions[i]) / z;
  return normalise(std::move(next));
}

std::vector<double> multiclass_reweight(std::span<const double> weights, std::span<const int> labels,
                                        std::span<const int> predictions, double alpha) {
  std::vector<double> next(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    next[i] = weights[i] * (labels[i] != predictions[i] ? std::exp(alpha) : 1.0);
  return normalise(std::move(next));
}

std::vector<int> combine_votes(EnsembleMode mode, int num_classes, std::span<const double> alphas,
                               const std::vector<std::vector<int>>& member_predictions, std::size_t prefix) {
  if (prefix == 0 || prefix > member_predictions.size() || prefix > alphas.size())
    throw DomainError("combine_votes: bad prefix");
  const std::size_t n = member_predictions.front().size();
  std::vector<int> out(n);
  std::vector<int> col(prefix);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < prefix; ++t) col[t] = member_predictions[t][i];
    out[i] = vote(mode, num_classes, alphas.first(prefix), col);
  }
  return out;
}

int ensemble_predict(const Ensemble& ens, const QuantumInput& state) {
  if (ens.members.empty()) throw DomainError("ensemble_predict: empty ensemble");
  std::vector<double> alphas;
  std::vector<int> labels;
  for (const auto& m : ens.members) {
    alphas.push_back(m.alpha);
    labels.push_back(predict(m.classifier, state));
  }
  return vote(ens.mode, ens.num_classes, alphas, labels);
}

std::vector<int> ensemble_predict_all(const Ensemble& ens, std::span<const QuantumInput> states) {
  if (ens.members.empty()) throw DomainError("ensemble_predict: empty ensemble");
  std::vector<double> alphas;
  std::vector<std::vector<int>> preds;
  for (const auto& m : ens.members) {
    alphas.push_back(m.alpha);
    preds.push_back(predict_all(m.classifier, states));
  }
  if (states.empty()) return {};
  return combine_votes(ens.mode, ens.num_classes, alphas, preds, preds.size());
}

BoostResult boost_binary(const WeightedDataset& data, const ModelFactory& factory, const BoostConfig& config,
                         const NoiseModel* noise, const RoundCallback& on_round) {
  return run_boost(Algorithm::kBinary, data, factory, config, noise, on_round);
}

BoostResult boost_multiclass(const WeightedDataset& data, const ModelFactory& factory, const BoostConfig& config,
                             const NoiseModel* noise, const RoundCallback& on_round) {
  return run_boost(Algorithm::kMulticlass, data, factory, config, noise, on_round);
}

std::vector<std::size_t> bootstrap_indices(std::uint64_t seed, int member, std::size_t n) {
  Rng rng = Rng::derive(seed, Stream::kBootstrap, static_cast<std::uint64_t>(member));
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = static_cast<std::size_t>(rng.below(n));
  return idx;
}

Ensemble bagging(const WeightedDataset& data, const ModelFactory& factory, const TrainConfig& train, int members,
                 std::uint64_t seed, const NoiseModel* noise) {
  if (members < 1) throw DomainError("bagging: need at least one member");
  if (data.empty()) throw DomainError("bagging: empty dataset");
  Ensemble ens;
  ens.mode = data.scheme() == LabelScheme::kBinary ? EnsembleMode::kBinary : EnsembleMode::kMulticlass;
  ens.num_classes = data.num_classes();
  for (int b = 0; b < members; ++b) {
    std::vector<double> counts(data.size(), 0.0);
    for (std::size_t i : bootstrap_indices(seed, b, data.size())) counts[i] += 1.0;
    const WeightedDataset resample = data.with_weights(std::move(counts));
    const Model model = factory(b + 1);
    TrainConfig tc = train;
    tc.init_seed = member_seed(seed, static_cast<std::uint64_t>(b), 0, 1);
    TrainResult tr = train_base(model.circuit, model.meas, resample, tc, noise);
    ens.members.push_back({1.0, std::move(tr.classifier)});
  }
  return ens;
}

void write_rounds_csv(std::ostream& out, const BoostReport& report) {
  out << "round,epsilon,alpha,train_error,train_bound\n";
  for (const auto& r : report.rounds)
    out << r.round << ',' << csv::num(r.epsilon) << ',' << csv::num(r.alpha) << ',' << csv::num(r.train_error) << ','
        << csv::num(r.train_bound) << '\n';
}

}  // namespace qboost
