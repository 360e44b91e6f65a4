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

#include "qboost/images.hpp"

#include "qboost/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qboost {

GrayImage to_gray(const RawImage& img) {
  GrayImage g{img.width, img.height, {}};
  g.values.assign(img.pixels.begin(), img.pixels.end());
  return g;
}

Resample parse_resample(const std::string& name) {
  if (name == "bilinear") return Resample::kBilinear;
  if (name == "area") return Resample::kArea;
  throw DomainError("unknown resample method '" + name + "'");
}

namespace {

// Weight of source cell i inside [lo, hi).
double overlap(int i, double lo, double hi) { return std::max(0.0, std::min(hi, i + 1.0) - std::max(lo, double(i))); }

GrayImage area_downsample(const GrayImage& img, int tw, int th, double sx, double sy) {
  GrayImage out{tw, th, std::vector<double>(static_cast<std::size_t>(tw * th))};
  for (int y = 0; y < th; ++y) {
    const double ylo = y * sy, yhi = (y + 1) * sy;
    for (int x = 0; x < tw; ++x) {
      const double xlo = x * sx, xhi = (x + 1) * sx;
      double acc = 0.0;
      for (int r = static_cast<int>(ylo); r < std::min(img.height, static_cast<int>(std::ceil(yhi))); ++r) {
        const double wy = overlap(r, ylo, yhi);
        for (int c = static_cast<int>(xlo); c < std::min(img.width, static_cast<int>(std::ceil(xhi))); ++c)
          acc += wy * overlap(c, xlo, xhi) * img.at(r, c);
      }
      out.values[static_cast<std::size_t>(y * tw + x)] = acc / (sx * sy);
    }
  }
  return out;
}

}  // namespace

GrayImage downsample(const GrayImage& img, int tw, int th, Resample method) {
  if (tw <= 0 || th <= 0) throw DimensionError("downsample: zero target dimension");
  if (tw > img.width || th > img.height) throw DimensionError("downsample: target exceeds source");
  const double sx = static_cast<double>(img.width) / tw;
  const double sy = static_cast<double>(img.height) / th;
  if (method == Resample::kArea) return area_downsample(img, tw, th, sx, sy);
  GrayImage out{tw, th, std::vector<double>(static_cast<std::size_t>(tw * th))};
  auto coord = [](int dst, double scale, int size, int& i0, int& i1, double& f) {
    double s = (dst + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(size - 1));
    i0 = static_cast<int>(std::floor(s));
    i1 = std::min(i0 + 1, size - 1);
    f = s - i0;
  };
  for (int y = 0; y < th; ++y) {
    int y0, y1;
    double fy;
    coord(y, sy, img.height, y0, y1, fy);
    for (int x = 0; x < tw; ++x) {
      int x0, x1;
      double fx;
      coord(x, sx, img.width, x0, x1, fx);
      const double top = (1 - fx) * img.at(y0, x0) + fx * img.at(y0, x1);
      const double bottom = (1 - fx) * img.at(y1, x0) + fx * img.at(y1, x1);
      out.values[static_cast<std::size_t>(y * tw + x)] = (1 - fy) * top + fy * bottom;
    }
  }
  return out;
}

GrayImage downsample(const RawImage& img, int tw, int th, Resample method) {
  return downsample(to_gray(img), tw, th, method);
}

StateVector amplitude_encode(std::span<const double> values, int num_qubits) {
  const std::size_t d = dim_of(num_qubits);
  if (values.size() > d) throw DimensionError("amplitude_encode: too many values for the register");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  const double norm = v.norm();
  if (!(norm > 0.0)) throw ZeroVector("amplitude_encode: all-zero input");
  v /= norm;
  return StateVector(num_qubits, std::move(v));
}

MnistTask build_mnist_task(std::span<const RawImage> images, std::span<const std::uint8_t> labels,
                           const MnistTaskConfig& cfg) {
  if (images.size() != labels.size()) throw DimensionError("build_mnist_task: image and label counts differ");
  std::vector<std::size_t> pool;
  std::vector<int> relabel(256, 0);
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    const int c = cfg.classes[k];
    if (c < 0 || c > 255 || relabel[static_cast<std::size_t>(c)] != 0) throw DomainError("build_mnist_task: bad class list");
    relabel[static_cast<std::size_t>(c)] = static_cast<int>(k) + 1;
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (relabel[labels[i]] > 0) pool.push_back(i);
  if (cfg.n_train + cfg.n_test > pool.size())
    throw InsufficientData("build_mnist_task: need " + std::to_string(cfg.n_train + cfg.n_test) +
                           " samples of the chosen classes, have " + std::to_string(pool.size()));

  Rng rng = Rng::derive(cfg.seed, Stream::kDataSplit);
  const auto perm = permutation(rng, pool.size());
  MnistTask task;
  auto encode = [&](std::size_t src) {
    GrayImage g = downsample(images[src], cfg.target_width, cfg.target_height, cfg.resample);
    for (double& v : g.values) v /= 255.0;
    return EncodedSample{amplitude_encode(g.values, cfg.num_qubits), relabel[labels[src]]};
  };
  for (std::size_t j = 0; j < cfg.n_train + cfg.n_test; ++j) {
    const std::size_t src = pool[perm[j]];
    if (j < cfg.n_train) {
      task.train_indices.push_back(src);
      task.train.push_back(encode(src));
    } else {
      task.test_indices.push_back(src);
      task.test.push_back(encode(src));
    }
  }
  return task;
}

}  // namespace qboost
