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

#ifndef QBOOST_PARALLEL_HPP
#define QBOOST_PARALLEL_HPP

namespace qboost {

/// Worker count for sample-parallel loops. QBOOST_THREADS caps it; 0 or unset
/// means the OpenMP default.
int worker_count();

}  // namespace qboost

#endif  // QBOOST_PARALLEL_HPP
