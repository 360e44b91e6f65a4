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

#include "qboost/dataset_io.hpp"

#include "qboost/idx.hpp"

#include <bit>
#include <cstring>

namespace qboost {

namespace {

static_assert(std::endian::native == std::endian::little, "container I/O assumes a little-endian host");

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

template <class T>
T get(std::span<const std::uint8_t> b, std::size_t& off) {
  if (off + sizeof(T) > b.size()) throw Truncated("dataset container truncated");
  T v;
  std::memcpy(&v, b.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

std::vector<std::uint8_t> write_annni_container(std::span<const AnnniPoint> points, int num_qubits) {
  std::vector<std::uint8_t> out{'Q', 'B', 'D', 'S'};
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(num_qubits));
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, points.size());
  for (const auto& p : points) {
    if (p.state.num_qubits() != num_qubits) throw DimensionError("container: state width mismatch");
    put(out, p.kappa);
    put(out, p.h);
    put<std::int32_t>(out, p.label);
    for (std::size_t i = 0; i < p.state.dim(); ++i) {
      put(out, p.state[i].real());
      put(out, p.state[i].imag());
    }
  }
  return out;
}

std::vector<AnnniPoint> read_annni_container(std::span<const std::uint8_t> b) {
  if (b.size() < 4 || std::memcmp(b.data(), "QBDS", 4) != 0) throw BadMagic("dataset container: bad magic");
  std::size_t off = 4;
  if (get<std::uint32_t>(b, off) != 1) throw BadMagic("dataset container: unsupported version");
  const auto n_qubits = static_cast<int>(get<std::uint32_t>(b, off));
  if (n_qubits < 1 || n_qubits > 12) throw DimensionOverflow("dataset container: bad qubit count");
  get<std::uint32_t>(b, off);
  const auto count = get<std::uint64_t>(b, off);
  const std::size_t record = 20 + 16 * dim_of(n_qubits);
  if (count > (b.size() - off) / record) throw Truncated("dataset container truncated");
  std::vector<AnnniPoint> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double kappa = get<double>(b, off);
    const double h = get<double>(b, off);
    const int label = get<std::int32_t>(b, off);
    Vector v(static_cast<Eigen::Index>(dim_of(n_qubits)));
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      const double re = get<double>(b, off);
      const double im = get<double>(b, off);
      v[j] = cplx(re, im);
    }
    points.push_back({kappa, h, label, StateVector(n_qubits, std::move(v))});
  }
  if (off != b.size()) throw TrailingData("dataset container: bytes after the last record");
  return points;
}

}  // namespace qboost
