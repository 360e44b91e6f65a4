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

#ifndef QBOOST_EXPERIMENTS_HPP
#define QBOOST_EXPERIMENTS_HPP

#include "qboost/boost.hpp"
#include "qboost/bounds.hpp"
#include "qboost/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qboost {

inline constexpr const char* kVersion = "qboost 1.0.0";

/// Unboosted baseline: one long training run, checkpoint picked by test
/// accuracy. Optimistic by construction.
struct BestRecord {
  int iteration = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct RepeatRecord {
  int repeat = 0;
  std::uint64_t seed = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  int num_params = 0;
  BoostReport report;
  std::vector<double> train_error;  // ensemble after each round
  std::vector<double> test_error;
  std::vector<double> train_accuracy;  // 1 - error
  std::vector<double> test_accuracy;
  std::vector<double> member_test_accuracy;
  std::vector<double> bagging_train_accuracy;  // majority vote of the first t members
  std::vector<double> bagging_test_accuracy;
  std::optional<BestRecord> qcnn_best;
  std::optional<BestRecord> noiseless_best;
  std::optional<RiskBound> risk_bound;  // binary tasks

  /// First round whose ensemble test accuracy exceeds `reference`.
  std::optional<int> crossing_round(double reference) const;
};

struct GeneralizationRow {
  int n = 0;
  std::vector<double> train_error;
  std::vector<double> test_error;
  double mean_abs_gap = 0.0;
  double inv_sqrt_n = 0.0;
};

struct BoundRow {
  long long num_gates;
  long long num_samples;
  double delta;
  double epsilon;
  int rounds;
  RiskBound bound;
  double rademacher;
};

struct RunRecord {
  ExperimentConfig config;
  std::vector<RepeatRecord> repeats;
  std::vector<GeneralizationRow> generalization;
  std::vector<BoundRow> bounds;
  double wall_seconds = 0.0;
};

/// Circuit and readout the config describes.
Model build_model(const ExperimentConfig& config);

/// Validates the config, runs the task and, when `write_files` is set, writes
/// its outputs under config.out (created if needed).
RunRecord run_experiment(const ExperimentConfig& config, bool write_files = true);

RunRecord run_annni_binary(const ExperimentConfig& config, bool write_files = true);
RunRecord run_mnist_multiclass(const ExperimentConfig& config, bool write_files = true);
RunRecord run_noise_compare(const ExperimentConfig& config, bool write_files = true);
RunRecord run_bagging_compare(const ExperimentConfig& config, bool write_files = true);
RunRecord run_bounds(const ExperimentConfig& config, bool write_files = true);

}  // namespace qboost

#endif  // QBOOST_EXPERIMENTS_HPP
