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

#include "qboost/config.hpp"
#include "qboost/experiments.hpp"
#include "qboost/idx.hpp"
#include "qboost/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qboost {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / ("qboost_expcli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                         ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  ExperimentConfig tiny_annni(const std::string& name) const {
    ExperimentConfig c;
    c.task = "annni-binary";
    c.num_qubits = 4;
    c.n_train = 16;
    c.n_test = 16;
    c.rounds = 2;
    c.repeats = 2;
    c.iterations = 6;
    c.blocks = 1;
    c.seed = 42;
    c.out = (root_ / name).string();
    return c;
  }

  // 4x4 synthetic digits 0..3 in IDX files under the test root.
  ExperimentConfig tiny_mnist(const std::string& name) const {
    std::vector<RawImage> imgs;
    std::vector<std::uint8_t> labels;
    Rng rng(5);
    for (int i = 0; i < 80; ++i) {
      const int d = i % 4;
      RawImage im{4, 4, std::vector<std::uint8_t>(16, 10)};
      for (int k = 0; k < 4; ++k) im.pixels[static_cast<std::size_t>(4 * d + k)] = static_cast<std::uint8_t>(150 + rng.below(100));
      imgs.push_back(std::move(im));
      labels.push_back(static_cast<std::uint8_t>(d));
    }
    write_file_bytes((root_ / "img.idx").string(), write_idx_images(imgs));
    write_file_bytes((root_ / "lab.idx").string(), write_idx_labels(labels));
    ExperimentConfig c = tiny_annni(name);
    c.task = "mnist-multiclass";
    c.mnist_images = (root_ / "img.idx").string();
    c.mnist_labels = (root_ / "lab.idx").string();
    c.image_width = c.image_height = 4;
    c.n_train = 24;
    c.n_test = 24;
    return c;
  }

  fs::path root_;
};

TEST(Config, ParseSetAndUnknownKeys) {
  const ExperimentConfig c = ExperimentConfig::parse("# comment\nrounds = 7\n  noise=amp-damp \nclasses = 0, 3\n\n");
  EXPECT_EQ(c.rounds, 7);
  EXPECT_EQ(c.noise, "amp-damp");
  EXPECT_EQ(c.classes, (std::vector<int>{0, 3}));
  EXPECT_THROW(ExperimentConfig::parse("bogus = 1\n"), DomainError);
  EXPECT_THROW(ExperimentConfig::parse("rounds 7\n"), DomainError);
  ExperimentConfig d;
  EXPECT_THROW(d.set("rounds", "x"), DomainError);
  EXPECT_THROW(d.set("bagging", "maybe"), DomainError);
  d.set("bagging", "true");
  EXPECT_TRUE(d.bagging);
}

TEST(Config, SnapshotRoundTripsEveryKey) {
  ExperimentConfig c;
  c.seed = 123;
  c.noise_rate = 0.1 + 0.2;  // not exactly representable as a short decimal
  c.sweep_samples = {100, 200};
  c.bounds_delta = {0.01, 1.0};
  const ExperimentConfig back = ExperimentConfig::parse(c.snapshot());
  EXPECT_EQ(back.snapshot(), c.snapshot());
  EXPECT_EQ(back.noise_rate, c.noise_rate);
  EXPECT_EQ(back.seed, c.seed);
  for (const auto& k : ExperimentConfig::keys())
    if (k != "out") EXPECT_NE(c.snapshot().find("#cfg " + k + " = "), std::string::npos) << k;
}

TEST(Config, ValidateRequiresSeedAndPositiveCounts) {
  ExperimentConfig c;
  EXPECT_THROW(c.validate(), DomainError);
  c.seed = 1;
  EXPECT_NO_THROW(c.validate());
  c.rounds = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c.rounds = 2;
  c.task = "noise-compare";
  EXPECT_THROW(c.validate(), DomainError);
  c.noise = "depolarizing";
  EXPECT_NO_THROW(c.validate());
  c.task = "nope";
  EXPECT_THROW(c.validate(), DomainError);
}

TEST_F(ExperimentTest, AnnniRunBoundDominatesAndFilesAreReproducible) {
  const ExperimentConfig c = tiny_annni("a");
  const RunRecord run = run_experiment(c);
  ASSERT_EQ(run.repeats.size(), 2U);
  for (const auto& r : run.repeats) {
    ASSERT_FALSE(r.report.weak_learner_failure);
    for (const auto& rr : r.report.rounds) EXPECT_LE(rr.train_error, rr.train_bound);
    for (std::size_t t = 0; t < r.train_error.size(); ++t) {
      EXPECT_EQ(r.train_accuracy[t], 1.0 - r.train_error[t]);
      EXPECT_EQ(r.train_error[t], r.report.rounds[t].train_error);
    }
    ASSERT_TRUE(r.risk_bound.has_value());
  }
  ExperimentConfig c2 = c;
  c2.out = (root_ / "b").string();
  run_experiment(c2);
  for (const char* f : {"rounds.csv", "summary.txt", "history_0.csv", "history_1.csv"})
    EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
  EXPECT_TRUE(fs::exists(root_ / "a" / "timing.txt"));

  // The header alone reproduces the run.
  ExperimentConfig c3 = ExperimentConfig::load((root_ / "a" / "rounds.csv").string());
  c3.out = (root_ / "c").string();
  run_experiment(c3);
  EXPECT_EQ(slurp(root_ / "a" / "rounds.csv"), slurp(root_ / "c" / "rounds.csv"));

  const std::string rounds = slurp(root_ / "a" / "rounds.csv");
  EXPECT_EQ(rounds.rfind("# qboost", 0), 0U);
  EXPECT_NE(rounds.find("#cfg seed = 42"), std::string::npos);
  const auto rows = data_lines(rounds);
  EXPECT_EQ(rows[0].rfind("round,epsilon,alpha,train_error,train_bound,", 0), 0U);
  // Accuracy columns are 1 - error columns.
  const auto head = split(rows[0]);
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin());
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    EXPECT_EQ(std::stod(cells[col("train_accuracy")]), 1.0 - std::stod(cells[col("train_error")]));
    EXPECT_EQ(std::stod(cells[col("test_accuracy")]), 1.0 - std::stod(cells[col("test_error")]));
  }
}

TEST_F(ExperimentTest, OutputsStayInsideOutDirectory) {
  const ExperimentConfig c = tiny_annni("only");
  run_experiment(c);
  for (const auto& e : fs::directory_iterator(root_)) EXPECT_EQ(e.path().filename(), "only");
}

TEST_F(ExperimentTest, SweepEmitsOneRowPerSize) {
  ExperimentConfig c = tiny_annni("sweep");
  c.repeats = 1;
  c.sweep_samples = {8, 12, 16};
  const RunRecord run = run_experiment(c);
  ASSERT_EQ(run.generalization.size(), 3U);
  const auto rows = data_lines(slurp(root_ / "sweep" / "generalization.csv"));
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[0], "n,mean_train_error,mean_test_error,mean_abs_gen_error,inv_sqrt_n");
  for (std::size_t i = 0; i < 3; ++i) {
    const auto cells = split(rows[i + 1]);
    EXPECT_EQ(std::stoi(cells[0]), c.sweep_samples[i]);
    EXPECT_DOUBLE_EQ(std::stod(cells[4]), 1.0 / std::sqrt(double(c.sweep_samples[i])));
  }
  EXPECT_TRUE(fs::exists(root_ / "sweep" / "history_n12_0.csv"));
}

TEST_F(ExperimentTest, MnistSingleRoundEnsembleEqualsMemberAndSummaryShape) {
  ExperimentConfig c = tiny_mnist("m");
  c.rounds = 1;
  c.repeats = 1;
  c.bagging = true;
  const RunRecord run = run_experiment(c);
  const auto& r = run.repeats.at(0);
  ASSERT_EQ(r.test_accuracy.size(), 1U);
  EXPECT_EQ(r.test_accuracy[0], r.member_test_accuracy[0]);
  ASSERT_TRUE(r.qcnn_best.has_value());
  const std::string summary = slurp(root_ / "m" / "summary.txt");
  EXPECT_NE(summary.find("\ntrain "), std::string::npos);
  EXPECT_NE(summary.find("\ntest "), std::string::npos);
  for (const char* method : {"adaboost", "bagging", "qcnn-best"}) EXPECT_NE(summary.find(method), std::string::npos);
  EXPECT_NE(summary.find("optimistic"), std::string::npos);
}

TEST_F(ExperimentTest, ZeroRateNoiseMatchesNoiselessBitwise) {
  ExperimentConfig c = tiny_mnist("n");
  c.task = "noise-compare";
  c.noise = "depolarizing";
  c.noise_rate = 0.0;
  c.repeats = 1;
  const RunRecord noisy = run_experiment(c);
  const auto& r = noisy.repeats.at(0);
  ASSERT_TRUE(r.qcnn_best && r.noiseless_best);
  EXPECT_EQ(r.qcnn_best->test_accuracy, r.noiseless_best->test_accuracy);
  EXPECT_EQ(r.qcnn_best->iteration, r.noiseless_best->iteration);
  ExperimentConfig clean = c;
  clean.task = "mnist-multiclass";
  clean.noise = "none";
  clean.out = (root_ / "clean").string();
  const RunRecord base = run_experiment(clean);
  EXPECT_EQ(base.repeats.at(0).test_accuracy, r.test_accuracy);
  EXPECT_EQ(base.repeats.at(0).report.epsilons(), r.report.epsilons());
  const auto rows = data_lines(slurp(root_ / "n" / "comparison.csv"));
  EXPECT_EQ(rows.size(), 1U + static_cast<std::size_t>(c.rounds));
}

TEST_F(ExperimentTest, NoisyCompareEmitsThreeSeries) {
  ExperimentConfig c = tiny_mnist("p");
  c.task = "noise-compare";
  c.noise = "depolarizing";
  c.noise_rate = 0.03;
  c.repeats = 1;
  c.n_train = c.n_test = 12;
  run_experiment(c);
  const auto rows = data_lines(slurp(root_ / "p" / "comparison.csv"));
  ASSERT_GE(rows.size(), 2U);
  EXPECT_EQ(split(rows[0]).size(), 5U);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const auto& cell : split(rows[i])) EXPECT_NE(cell, "nan");
  EXPECT_NE(slurp(root_ / "p" / "summary.txt").find("crossing round"), std::string::npos);
}

TEST_F(ExperimentTest, BoundsGridMatchesIndependentFormula) {
  ExperimentConfig c;
  c.task = "bounds";
  c.seed = 0;
  c.out = (root_ / "bounds").string();
  const RunRecord run = run_experiment(c);
  ASSERT_EQ(run.bounds.size(), c.bounds_gates.size() * c.bounds_samples.size() * c.bounds_delta.size() *
                                   c.bounds_epsilon.size());
  bool large_row = false;
  for (const auto& b : run.bounds) {
    const double k = double(b.num_gates), n = double(b.num_samples);
    const double expected = std::exp(-2.0 * b.rounds * (0.5 - b.epsilon) * (0.5 - b.epsilon)) +
                            12 * std::sqrt(k * std::log(7 * k) / n) + 4 * std::sqrt(k / n) +
                            std::sqrt(std::log(1 / b.delta) / (2 * n));
    EXPECT_NEAR(b.bound.total, expected, 1e-12);
    if (b.delta == 1.0) EXPECT_EQ(b.bound.confidence, 0.0);
    large_row = large_row || (b.num_gates == 120 && b.num_samples == 8000);
  }
  EXPECT_TRUE(large_row);
  const auto rows = data_lines(slurp(root_ / "bounds" / "bounds.csv"));
  EXPECT_EQ(rows.size(), run.bounds.size() + 1);
}

TEST(BuildModel, DumpedCircuitMatchesConfig) {
  ExperimentConfig c;
  c.seed = 1;
  EXPECT_EQ(build_model(c).circuit.num_params(), 43);
  c.task = "mnist-multiclass";
  c.num_qubits = 4;
  c.blocks = 1;
  const Model m = build_model(c);
  EXPECT_EQ(m.meas.num_classes(), 4);
  EXPECT_EQ(m.circuit.num_params(), 19);
}

}  // namespace
}  // namespace qboost
