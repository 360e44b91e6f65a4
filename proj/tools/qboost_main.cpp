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

// Command-line driver for the experiment tasks.

#include "qboost/circuit_io.hpp"
#include "qboost/common.hpp"
#include "qboost/config.hpp"
#include "qboost/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Boosted quantum classifier experiments"};
  app.set_version_flag("--version", std::string(qboost::kVersion));

  std::string task;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> rounds, samples, qubits;
  std::optional<std::string> noise, out;
  std::optional<double> noise_rate;
  std::vector<std::string> overrides;
  bool dump_circuit = false;

  app.add_option("task", task, "annni-binary | mnist-multiclass | noise-compare | bagging-compare | bounds")
      ->required()
      ->check(CLI::IsMember({"annni-binary", "mnist-multiclass", "noise-compare", "bagging-compare", "bounds"}));
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed");
  app.add_option("--rounds", rounds, "boosting rounds T");
  app.add_option("--samples", samples, "training set size");
  app.add_option("--noise", noise, "none | depolarizing | amp-damp | phase-damp");
  app.add_option("--noise-rate", noise_rate, "channel rate");
  app.add_option("--qubits", qubits, "register width");
  app.add_option("--out", out, "output directory");
  app.add_option("--set", overrides, "extra key=value overrides")->allow_extra_args(false);
  app.add_flag("--dump-circuit", dump_circuit, "print the base circuit and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    qboost::ExperimentConfig cfg =
        config_path.empty() ? qboost::ExperimentConfig{} : qboost::ExperimentConfig::load(config_path);
    cfg.task = task;
    if (seed) cfg.seed = *seed;
    if (rounds) cfg.rounds = *rounds;
    if (samples) cfg.n_train = *samples;
    if (noise) cfg.noise = *noise;
    if (noise_rate) cfg.noise_rate = *noise_rate;
    if (qubits) cfg.num_qubits = *qubits;
    if (out) cfg.out = *out;
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw qboost::Error("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }

    if (dump_circuit) {
      std::cout << qboost::serialize_circuit(qboost::build_model(cfg).circuit);
      return 0;
    }

    const qboost::RunRecord run = qboost::run_experiment(cfg);
    std::cout << "wrote " << cfg.out << " (" << run.repeats.size() << " runs, " << run.bounds.size()
              << " bound rows, " << run.wall_seconds << " s)\n";
  } catch (const std::exception& e) {
    std::cerr << "qboost: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
