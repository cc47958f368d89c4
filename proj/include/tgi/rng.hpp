// Copyright 2026 The tgi Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "tgi/error.hpp"

namespace tgi {

// Identifier stamped into dataset manifests. Changing the engine or any
// derivation below changes every dataset byte, so bump it when you do.
inline constexpr std::string_view kPrngAlgorithm = "mt19937_64/splitmix64-derive/reject-v1";

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Single-owner random stream. std::mt19937_64 output is fixed by the
// standard; the bounded draws here avoid std distributions, whose results
// differ between standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Independent stream for (seed, label), e.g. (sample seed, generator id).
  static RngStream derive(std::uint64_t seed, std::string_view label) {
    return RngStream(splitmix64(seed) ^ fnv1a64(label));
  }

  RngStream(const RngStream&) = delete;
  RngStream& operator=(const RngStream&) = delete;
  RngStream(RngStream&&) = default;
  RngStream& operator=(RngStream&&) = default;

  std::uint64_t next() { return engine_(); }

  // Uniform over [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw PreconditionViolation("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    // Reject the top 2^64 mod span values so every residue is equally likely.
    const std::uint64_t rem = (UINT64_MAX % span + 1) % span;
    std::uint64_t x;
    do {
      x = next();
    } while (rem != 0 && x > UINT64_MAX - rem);
    return lo + static_cast<std::int64_t>(x % span);
  }

  int uniform(int lo, int hi) { return static_cast<int>(uniform_int(lo, hi)); }

  // 53-bit uniform double in [0, 1).
  double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  const T& choice(const std::vector<T>& items) {
    if (items.empty()) throw PreconditionViolation("choice from empty list");
    return items[static_cast<std::size_t>(uniform(0, static_cast<int>(items.size()) - 1))];
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tgi
