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

#include "qboost/annni.hpp"
#include "qboost/dataset_io.hpp"
#include "qboost/idx.hpp"
#include "qboost/images.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

namespace qboost {
namespace {

Matrix site_op(const Matrix2& p, int site, int n) { return embed_local_operator(p, site, n); }

// Term-by-term Kronecker build of the chain Hamiltonian.
Matrix oracle_hamiltonian(int n, double kappa, double h) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < n; ++i) m -= site_op(pauli::x(), i, n) * site_op(pauli::x(), i + 1, n);
  for (int i = 0; i + 2 < n; ++i) m += kappa * site_op(pauli::x(), i, n) * site_op(pauli::x(), i + 2, n);
  for (int i = 0; i < n; ++i) m -= h * site_op(pauli::z(), i, n);
  return m;
}

TEST(Annni, TwoSpinsHaveNoFrustrationTerm) {
  const double h = 0.7;
  const Matrix expected = -(kron(pauli::x(), pauli::x()) + h * (kron(pauli::z(), Matrix2::Identity()) +
                                                                kron(Matrix2::Identity(), pauli::z())));
  EXPECT_LT((annni_hamiltonian(2, 0.9, h).matrix() - expected).norm(), 1e-15);
}

TEST(Annni, ThreeSpinsAtZeroFieldSpectrum) {
  const Matrix h = annni_hamiltonian(3, 0.0, 0.0).matrix();
  const Matrix xx = -(site_op(pauli::x(), 0, 3) * site_op(pauli::x(), 1, 3) +
                      site_op(pauli::x(), 1, 3) * site_op(pauli::x(), 2, 3));
  const auto a = Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues();
  const auto b = Eigen::SelfAdjointEigenSolver<Matrix>(xx).eigenvalues();
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(a[0], -2.0, 1e-12);
}

TEST(Annni, MatchesKroneckerBuilder) {
  for (int n = 2; n <= 6; ++n)
    EXPECT_LT((annni_hamiltonian(n, 0.37, 1.21).matrix() - oracle_hamiltonian(n, 0.37, 1.21)).norm(), 1e-12);
  EXPECT_THROW(annni_hamiltonian(1, 0.3, 1.0), DomainError);
  EXPECT_THROW(annni_hamiltonian(9, 0.3, 1.0), DomainError);
}

TEST(Annni, CriticalLinesAndLabels) {
  EXPECT_NEAR(annni_ising_line(0.2), 4 * (1 - std::sqrt(0.7)), 1e-14);
  EXPECT_NEAR(annni_ising_line(0.2), 0.6533599, 1e-7);
  EXPECT_EQ(annni_label(0.2, 1.5), 1);
  EXPECT_EQ(annni_label(0.2, 0.1), -1);
  EXPECT_EQ(annni_ci_line(0.5), 0.0);
  EXPECT_EQ(annni_label(0.8, 1.5), 1);
  EXPECT_EQ(annni_label(0.8, 0.1), -1);
}

TEST(Annni, LabelsStableAwayFromTheLine) {
  Rng rng(12);
  for (int t = 0; t < 2000; ++t) {
    const double k = rng.uniform_open(0.0, 1.0);
    const double line = annni_critical_field(k);
    EXPECT_EQ(annni_label(k, line + 1e-9 + 1e-12), 1);
    EXPECT_EQ(annni_label(k, line - 1e-9), -1);
  }
}

TEST(Annni, DatasetDeterministicDistinctAndResidual) {
  const auto a = generate_annni_dataset(4, 30, 5);
  const auto b = generate_annni_dataset(4, 30, 5);
  ASSERT_EQ(a.size(), 30U);
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kappa, b[i].kappa);
    EXPECT_EQ(a[i].h, b[i].h);
    EXPECT_EQ(a[i].state.amplitudes(), b[i].state.amplitudes());
    EXPECT_EQ(a[i].label, annni_label(a[i].kappa, a[i].h));
    EXPECT_TRUE(seen.insert({a[i].kappa, a[i].h}).second);
    const Matrix h = annni_hamiltonian(4, a[i].kappa, a[i].h).matrix();
    const Vector& v = a[i].state.amplitudes();
    const double e = (v.adjoint() * h * v)(0).real();
    EXPECT_LT((h * v - e * v).norm(), 1e-8);
  }
  EXPECT_NE(generate_annni_dataset(4, 5, 6)[0].kappa, a[0].kappa);
}

TEST(Annni, LabelFractionMatchesCriticalLineArea) {
  // Paramagnetic fraction = mean over kappa of (2 - line(kappa)) / 2, integrated by midpoint rule.
  const int steps = 200000;
  double area = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double k = (i + 0.5) / steps;
    area += std::clamp(2.0 - annni_critical_field(k), 0.0, 2.0) / 2.0;
  }
  area /= steps;
  std::size_t plus = 0;
  const auto pts = generate_annni_dataset(2, 1000, 99);
  for (const auto& p : pts) plus += p.label == 1;
  EXPECT_NEAR(static_cast<double>(plus) / 1000.0, area, 0.05);
}

TEST(Idx, MinimalImageFixture) {
  const std::vector<std::uint8_t> bytes{0, 0, 8, 3, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0x7F};
  ASSERT_EQ(bytes.size(), 17U);
  const auto imgs = parse_idx_images(bytes);
  ASSERT_EQ(imgs.size(), 1U);
  EXPECT_EQ(imgs[0].width, 1);
  EXPECT_EQ(imgs[0].height, 1);
  EXPECT_EQ(imgs[0].at(0, 0), 127);
  EXPECT_EQ(write_idx_images(imgs), bytes);
}

TEST(Idx, LabelFixture) {
  const std::vector<std::uint8_t> bytes{0, 0, 8, 1, 0, 0, 0, 4, 0, 1, 2, 3};
  EXPECT_EQ(parse_idx_labels(bytes), (std::vector<std::uint8_t>{0, 1, 2, 3}));
  EXPECT_EQ(write_idx_labels(parse_idx_labels(bytes)), bytes);
}

TEST(Idx, RoundTripsRandomFixtures) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const int w = 1 + static_cast<int>(rng.below(9)), h = 1 + static_cast<int>(rng.below(9));
    std::vector<RawImage> imgs(rng.below(6));
    for (auto& im : imgs) {
      im.width = w;
      im.height = h;
      for (int i = 0; i < w * h; ++i) im.pixels.push_back(static_cast<std::uint8_t>(rng.below(256)));
    }
    const auto bytes = write_idx_images(imgs);
    EXPECT_EQ(write_idx_images(parse_idx_images(bytes)), bytes);
  }
}

TEST(Idx, RejectsCorruptInputs) {
  const std::vector<std::uint8_t> zero_magic{0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0};
  EXPECT_THROW(parse_idx_images(zero_magic), BadMagic);
  const std::vector<std::uint8_t> label_magic{0, 0, 8, 1, 0, 0, 0, 0};
  EXPECT_THROW(parse_idx_images(label_magic), BadMagic);
  const std::vector<std::uint8_t> short_payload{0, 0, 8, 3, 0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 1, 9};
  EXPECT_THROW(parse_idx_images(short_payload), Truncated);
  const std::vector<std::uint8_t> short_header{0, 0, 8, 3, 0, 0};
  EXPECT_THROW(parse_idx_images(short_header), Truncated);
  const std::vector<std::uint8_t> extra{0, 0, 8, 1, 0, 0, 0, 1, 5, 6};
  EXPECT_THROW(parse_idx_labels(extra), TrailingData);
  const std::vector<std::uint8_t> huge{0, 0, 8, 3, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0, 0, 0, 1};
  EXPECT_THROW(parse_idx_images(huge), DimensionOverflow);
  // Every error derives from IdxError.
  EXPECT_THROW(parse_idx_labels(extra), IdxError);
}

GrayImage gray(int w, int h, std::vector<double> v) { return GrayImage{w, h, std::move(v)}; }

TEST(Downsample, ConstantAndIdentity) {
  const GrayImage c = gray(6, 4, std::vector<double>(24, 3.5));
  for (auto m : {Resample::kBilinear, Resample::kArea}) {
    const GrayImage d = downsample(c, 3, 3, m);
    for (double v : d.values) EXPECT_NEAR(v, 3.5, 1e-14);
  }
  Rng rng(1);
  std::vector<double> vals(20);
  for (double& v : vals) v = rng.uniform();
  const GrayImage img = gray(5, 4, vals);
  EXPECT_EQ(downsample(img, 5, 4).values, vals);
  EXPECT_EQ(downsample(img, 5, 4, Resample::kArea).values, vals);
  EXPECT_THROW(downsample(img, 0, 2), DimensionError);
  EXPECT_THROW(downsample(img, 6, 2), DimensionError);
}

TEST(Downsample, FourByFourGradientByHand) {
  std::vector<double> v(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v[static_cast<std::size_t>(r * 4 + c)] = 10.0 * (4 * r + c);
  // Sample points sit at (0.5, 0.5), (0.5, 2.5), ... so each output averages a 2x2 block.
  const std::vector<double> expected{25, 45, 105, 125};
  const GrayImage d = downsample(gray(4, 4, v), 2, 2);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(d.values[i], expected[i], 1e-13);
  const GrayImage a = downsample(gray(4, 4, v), 2, 2, Resample::kArea);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.values[i], expected[i], 1e-13);
}

TEST(Downsample, AreaUsesFractionalCoverage) {
  // 3 -> 2 columns: each output covers 1.5 source cells.
  const GrayImage d = downsample(gray(3, 1, {0.0, 3.0, 6.0}), 2, 1, Resample::kArea);
  EXPECT_NEAR(d.values[0], (0.0 + 0.5 * 3.0) / 1.5, 1e-14);
  EXPECT_NEAR(d.values[1], (0.5 * 3.0 + 6.0) / 1.5, 1e-14);
  EXPECT_EQ(parse_resample("area"), Resample::kArea);
  EXPECT_THROW(parse_resample("cubic"), DomainError);
}

TEST(AmplitudeEncode, Cases) {
  const std::vector<double> e0{1, 0, 0, 0}, ones{1, 1, 1, 1}, tf{3, 4};
  EXPECT_NEAR(std::abs(amplitude_encode(e0, 2)[0] - 1.0), 0.0, 1e-15);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(amplitude_encode(ones, 2)[i].real(), 0.5, 1e-15);
  const StateVector s = amplitude_encode(tf, 1);
  EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(s[1].real(), 0.8, 1e-15);
  const std::vector<double> z{0, 0};
  EXPECT_THROW(amplitude_encode(z, 1), ZeroVector);
  EXPECT_THROW(amplitude_encode(ones, 1), DimensionError);
  const std::vector<double> pad{1, 1};
  EXPECT_NEAR(amplitude_encode(pad, 2)[3].real(), 0.0, 0.0);
}

struct Fixture {
  std::vector<RawImage> images;
  std::vector<std::uint8_t> labels;
};

Fixture synthetic_mnist(int count) {
  Fixture f;
  Rng rng(8);
  for (int i = 0; i < count; ++i) {
    RawImage im{8, 8, std::vector<std::uint8_t>(64)};
    for (auto& p : im.pixels) p = static_cast<std::uint8_t>(1 + rng.below(255));
    f.images.push_back(std::move(im));
    f.labels.push_back(static_cast<std::uint8_t>(rng.below(6)));
  }
  return f;
}

TEST(MnistTask, DisjointSortedAndRelabelled) {
  const Fixture f = synthetic_mnist(200);
  MnistTaskConfig cfg;
  cfg.classes = {0, 1, 2, 3};
  cfg.target_width = cfg.target_height = 4;
  cfg.num_qubits = 4;
  cfg.n_train = 40;
  cfg.n_test = 30;
  cfg.seed = 3;
  const MnistTask t = build_mnist_task(f.images, f.labels, cfg);
  ASSERT_EQ(t.train.size(), 40U);
  ASSERT_EQ(t.test.size(), 30U);
  std::set<std::size_t> a(t.train_indices.begin(), t.train_indices.end());
  for (std::size_t i : t.test_indices) EXPECT_EQ(a.count(i), 0U);
  for (std::size_t k = 0; k < t.train.size(); ++k) {
    const int digit = f.labels[t.train_indices[k]];
    EXPECT_LT(digit, 4);
    EXPECT_EQ(t.train[k].label, digit + 1);
    EXPECT_EQ(t.train[k].state.num_qubits(), 4);
  }
  const MnistTask again = build_mnist_task(f.images, f.labels, cfg);
  EXPECT_EQ(again.train_indices, t.train_indices);
}

TEST(MnistTask, EmptyTrainAndHistogram) {
  const Fixture f = synthetic_mnist(200);
  MnistTaskConfig cfg;
  cfg.classes = {4, 1};
  cfg.target_width = cfg.target_height = 2;
  cfg.num_qubits = 2;
  cfg.n_train = 0;
  std::size_t available = 0;
  for (auto l : f.labels) available += (l == 4 || l == 1);
  cfg.n_test = available;
  const MnistTask t = build_mnist_task(f.images, f.labels, cfg);
  EXPECT_TRUE(t.train.empty());
  std::size_t fours = 0, ones = 0;
  for (const auto& s : t.test) (s.label == 1 ? fours : ones) += 1;
  std::size_t oracle4 = 0;
  for (auto l : f.labels) oracle4 += l == 4;
  EXPECT_EQ(fours, oracle4);
  EXPECT_EQ(fours + ones, available);
  cfg.n_test = available + 1;
  EXPECT_THROW(build_mnist_task(f.images, f.labels, cfg), InsufficientData);
  cfg.classes = {1, 1};
  EXPECT_THROW(build_mnist_task(f.images, f.labels, cfg), DomainError);
}

TEST(Container, RoundTripAndErrors) {
  const auto pts = generate_annni_dataset(3, 6, 1);
  const auto bytes = write_annni_container(pts, 3);
  const auto back = read_annni_container(bytes);
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(back[i].kappa, pts[i].kappa);
    EXPECT_EQ(back[i].label, pts[i].label);
    EXPECT_EQ(back[i].state.amplitudes(), pts[i].state.amplitudes());
  }
  EXPECT_EQ(write_annni_container(back, 3), bytes);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(read_annni_container(bad), BadMagic);
  const std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 3);
  EXPECT_THROW(read_annni_container(cut), Truncated);
  auto more = bytes;
  more.push_back(0);
  EXPECT_THROW(read_annni_container(more), TrailingData);
}

}  // namespace
}  // namespace qboost
