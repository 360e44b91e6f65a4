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

#ifndef QBOOST_IMAGES_HPP
#define QBOOST_IMAGES_HPP

#include "qboost/idx.hpp"
#include "qboost/qstate.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qboost {

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Real-valued grayscale image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int row, int col) const { return values[static_cast<std::size_t>(row * width + col)]; }
};

GrayImage to_gray(const RawImage& img);

enum class Resample { kBilinear, kArea };

Resample parse_resample(const std::string& name);  // "bilinear" | "area"

/// kBilinear: centre-aligned grid, src = (dst + 0.5) * (source / target) - 0.5,
/// clamped to the image edges. kArea: mean over each output pixel's footprint,
/// with fractional coverage at the borders.
GrayImage downsample(const GrayImage& img, int target_width, int target_height,
                     Resample method = Resample::kBilinear);
GrayImage downsample(const RawImage& img, int target_width, int target_height,
                     Resample method = Resample::kBilinear);

/// Zero-pads to 2^N and normalises.
StateVector amplitude_encode(std::span<const double> values, int num_qubits);

struct EncodedSample {
  StateVector state;
  int label;
};

struct MnistTaskConfig {
  std::vector<int> classes{0, 1, 2, 3};
  int target_width = 8;
  int target_height = 8;
  Resample resample = Resample::kBilinear;
  int num_qubits = 6;
  std::size_t n_train = 500;
  std::size_t n_test = 500;
  std::uint64_t seed = 0;
};

struct MnistTask {
  std::vector<EncodedSample> train;
  std::vector<EncodedSample> test;
  std::vector<std::size_t> train_indices;  // into the source arrays
  std::vector<std::size_t> test_indices;
};

/// Filters to the class set, relabels digit classes[k] as k+1, scales pixels
/// to [0,1], downsamples, encodes and draws disjoint seeded train/test subsets.
MnistTask build_mnist_task(std::span<const RawImage> images, std::span<const std::uint8_t> labels,
                           const MnistTaskConfig& config);

}  // namespace qboost

#endif  // QBOOST_IMAGES_HPP
