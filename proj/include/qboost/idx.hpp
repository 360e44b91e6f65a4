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

// IDX files: big-endian magic (0x0000 | type 0x08 | ndims), ndims big-endian
// uint32 dimensions, then the unsigned-byte payload.

#ifndef QBOOST_IDX_HPP
#define QBOOST_IDX_HPP

#include "qboost/common.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qboost {

class IdxError : public Error {
 public:
  using Error::Error;
};
class BadMagic : public IdxError {
 public:
  using IdxError::IdxError;
};
class Truncated : public IdxError {
 public:
  using IdxError::IdxError;
};
class DimensionOverflow : public IdxError {
 public:
  using IdxError::IdxError;
};
class TrailingData : public IdxError {
 public:
  using IdxError::IdxError;
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct RawImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row * width + col)]; }
};

std::vector<RawImage> parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

/// All images must share one size.
std::vector<std::uint8_t> write_idx_images(std::span<const RawImage> images);
std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace qboost

#endif  // QBOOST_IDX_HPP
