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

#include "qboost/idx.hpp"

#include <fstream>
#include <iterator>
#include <limits>

namespace qboost {

namespace {

constexpr std::uint64_t kMaxPayload = std::uint64_t{1} << 32;

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t off) {
  if (b.size() < off + 4) throw Truncated("IDX: header truncated");
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) | (std::uint32_t{b[off + 2]} << 8) |
         std::uint32_t{b[off + 3]};
}

void push_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

/// Checks magic, reads dims and validates the payload size.
std::vector<std::uint32_t> read_header(std::span<const std::uint8_t> b, std::uint32_t magic, std::size_t& offset) {
  const std::uint32_t m = read_be32(b, 0);
  if (m != magic) throw BadMagic("IDX: unexpected magic number " + std::to_string(m));
  const std::size_t ndims = magic & 0xFF;
  std::vector<std::uint32_t> dims(ndims);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ndims; ++i) {
    dims[i] = read_be32(b, 4 + 4 * i);
    total *= dims[i];
    if (total > kMaxPayload) throw DimensionOverflow("IDX: dimensions exceed the supported payload size");
  }
  offset = 4 + 4 * ndims;
  const std::uint64_t have = b.size() - offset;
  if (have < total) throw Truncated("IDX: payload truncated");
  if (have > total) throw TrailingData("IDX: bytes after the payload");
  return dims;
}

}  // namespace

std::vector<RawImage> parse_idx_images(std::span<const std::uint8_t> bytes) {
  std::size_t off = 0;
  const auto dims = read_header(bytes, kIdxImageMagic, off);
  const std::size_t count = dims[0], rows = dims[1], cols = dims[2];
  if (rows > static_cast<std::size_t>(std::numeric_limits<int>::max()) ||
      cols > static_cast<std::size_t>(std::numeric_limits<int>::max()))
    throw DimensionOverflow("IDX: image side too large");
  std::vector<RawImage> images(count);
  const std::size_t px = rows * cols;
  for (std::size_t i = 0; i < count; ++i) {
    images[i].width = static_cast<int>(cols);
    images[i].height = static_cast<int>(rows);
    const auto* src = bytes.data() + off + i * px;
    images[i].pixels.assign(src, src + px);
  }
  return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  std::size_t off = 0;
  read_header(bytes, kIdxLabelMagic, off);
  return {bytes.begin() + static_cast<std::ptrdiff_t>(off), bytes.end()};
}

std::vector<std::uint8_t> write_idx_images(std::span<const RawImage> images) {
  std::vector<std::uint8_t> out;
  const int h = images.empty() ? 0 : images[0].height;
  const int w = images.empty() ? 0 : images[0].width;
  push_be32(out, kIdxImageMagic);
  push_be32(out, static_cast<std::uint32_t>(images.size()));
  push_be32(out, static_cast<std::uint32_t>(h));
  push_be32(out, static_cast<std::uint32_t>(w));
  for (const auto& img : images) {
    if (img.width != w || img.height != h || img.pixels.size() != static_cast<std::size_t>(w * h))
      throw DimensionError("write_idx_images: images differ in size");
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  }
  return out;
}

std::vector<std::uint8_t> write_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  push_be32(out, kIdxLabelMagic);
  push_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace qboost
