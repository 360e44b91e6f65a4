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

// Flat `key = value` experiment configuration.
//
// Blank lines and lines starting with '#' are skipped, except lines starting
// with "#cfg ", which are read as key = value. Every emitted CSV starts with
// such lines, so `grep '^#cfg' rounds.csv > rerun.conf` recreates the run.

#ifndef QBOOST_CONFIG_HPP
#define QBOOST_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qboost {

struct ExperimentConfig {
  std::string task = "annni-binary";  // annni-binary | mnist-multiclass | noise-compare | bagging-compare | bounds
  std::string dataset;                // annni | mnist; empty picks the task default
  int num_qubits = 6;
  int n_train = 200;
  int n_test = 200;
  int rounds = 20;
  int repeats = 3;
  std::optional<std::uint64_t> seed;

  std::string noise = "none";
  double noise_rate = 0.03;
  bool noisy_pooling = true;

  double learning_rate = 0.05;
  int iterations = 120;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double prob_floor = 1e-10;
  int max_retries = 5;
  double epsilon_stop = 1e-12;

  int blocks = 2;
  std::string readout = "sign";  // sign | argmax; binary tasks only, MNIST tasks always use argmax
  std::string prelayer;
  std::string conv_unit = "Y0,Y1,ZZ,Y0,Y1";
  char pool_axis = 'Y';

  std::vector<int> sweep_samples;
  double delta = 0.01;

  std::string mnist_images = "data/mnist/mnist0123-images-idx3-ubyte";
  std::string mnist_labels = "data/mnist/mnist0123-labels-idx1-ubyte";
  std::vector<int> classes{0, 1, 2, 3};
  int image_width = 8;
  int image_height = 8;
  std::string resample = "bilinear";  // bilinear | area

  bool bagging = false;
  bool qcnn_best = true;

  std::vector<int> bounds_gates{1, 10, 43, 120};
  std::vector<int> bounds_samples{100, 200, 400, 800, 2000, 8000};
  std::vector<double> bounds_delta{0.01, 0.05, 1.0};
  std::vector<double> bounds_epsilon{0.3, 0.4, 0.45};
  int bounds_rounds = 25;

  std::string out = "out";

  /// Sets one key from its text form; throws on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  static const std::vector<std::string>& keys();

  /// Parses a config file body on top of the defaults. When "#cfg key = value"
  /// lines are present (an emitted CSV or summary), only those lines are read.
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  /// "#cfg key = value" lines for every key, in a fixed order.
  std::string snapshot() const;

  /// Positive counts, a seed, known task/noise/readout names.
  void validate() const;

  std::string resolved_dataset() const;
};

}  // namespace qboost

#endif  // QBOOST_CONFIG_HPP
