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

// Binary container for generated ANNNI datasets, all fields little-endian:
//
//   "QBDS"            4 bytes
//   version           uint32 (1)
//   num_qubits N      uint32
//   label scheme      uint32 (0 binary, 1 multiclass)
//   count n           uint64
//   n records of      kappa f64, h f64, label int32, 2^N x (re f64, im f64)

#ifndef QBOOST_DATASET_IO_HPP
#define QBOOST_DATASET_IO_HPP

#include "qboost/annni.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qboost {

std::vector<std::uint8_t> write_annni_container(std::span<const AnnniPoint> points, int num_qubits);
std::vector<AnnniPoint> read_annni_container(std::span<const std::uint8_t> bytes);

}  // namespace qboost

#endif  // QBOOST_DATASET_IO_HPP
