// Copyright 2026 The mixsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXSEL_RNG_HPP_
#define MIXSEL_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace mixsel {

/// Seeded random stream with explicitly specified distributions.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// distributions are implemented here rather than taken from <random> so
/// that a (seed, stream name) pair produces the same draw sequence on any
/// standard library. Every stochastic component of the library derives its
/// stream from a master seed and a name via substream_seed().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64-bit draw.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform real in [0, 1).
  double uniform();

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n), unbiased (rejection sampling). n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Marsaglia polar method.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  /// Beta(alpha, alpha) draw; alpha > 0.
  double beta_symmetric(double alpha);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Derives the seed of a named sub-stream from a master seed.
/// Stream names keep RNG consumption independent across components, so a
/// refactoring that reorders draws in one component does not shift another.
std::uint64_t substream_seed(std::uint64_t master, std::string_view name);

/// Sub-stream additionally keyed by an index (e.g. epoch number).
std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                             std::uint64_t index);

}  // namespace mixsel

#endif  // MIXSEL_RNG_HPP_
