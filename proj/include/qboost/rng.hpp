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

#ifndef QBOOST_RNG_HPP
#define QBOOST_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace qboost {

/// Purposes that partition the random streams of a run.
enum class Stream : std::uint32_t {
  kInit = 1,
  kBootstrap = 2,
  kAnnniDraw = 3,
  kDataSplit = 4,
  kRepeat = 5,
  kTest = 99,
};

/// Seeded generator whose substreams are derived from (seed, stream, indices).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// are fully specified by the standard. Uniform and normal variates are
/// produced here rather than through <random> distributions, whose algorithms
/// are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, {}) {}

  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * path.size());
    auto push = [&words](std::uint64_t v) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto p : path) push(p);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  /// Substream derived from this generator's identity; does not advance it.
  static Rng derive(std::uint64_t seed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0,
                    std::uint64_t c = 0) {
    return Rng(seed, {static_cast<std::uint64_t>(stream), a, b, c});
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in the open interval (lo, hi).
  double uniform_open(double lo, double hi) {
    double u = 0.0;
    do {
      u = uniform();
    } while (u == 0.0);
    return lo + (hi - lo) * u;
  }

  /// Uniform integer in [0, n) by rejection (unbiased).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal variate (Box-Muller, one value per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> permutation(Rng& rng, std::size_t n);

}  // namespace qboost

#endif  // QBOOST_RNG_HPP
