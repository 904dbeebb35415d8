// Copyright 2026 The splitmerge Authors
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

#ifndef SPLITMERGE_RNG_HPP
#define SPLITMERGE_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace splitmerge {

/// Reproducible random stream, version "sm-rng-1".
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distribution layer is spelled out here instead of using
/// <random> distributions, whose algorithms differ between standard
/// libraries:
///   uniform01()  = (next() >> 11) * 2^-53
///   below(k)     = rejection sampling on next(), rejecting draws
///                  >= 2^64 - (2^64 mod k), result = draw mod k
///   shuffle      = Fisher-Yates from the back, swap(i, below(i + 1))
class Rng {
 public:
  static constexpr const char* kVersion = "sm-rng-1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, k). k must be positive.
  std::uint64_t below(std::uint64_t k) {
    const std::uint64_t rem = (~std::uint64_t{0} - k + 1) % k;  // 2^64 mod k
    const std::uint64_t limit = ~std::uint64_t{0} - rem;         // last valid
    for (;;) {
      const std::uint64_t x = next();
      if (rem == 0 || x <= limit) return x % k;
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent per-item seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace splitmerge

#endif  // SPLITMERGE_RNG_HPP
