// Copyright 2026 The syneval Authors.
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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace syneval {

// SplitMix64 (Steele, Lea & Flood 2014): state += 0x9E3779B97F4A7C15, then
// the 64-bit finalizer below. Chosen because it is tiny, fully specified and
// trivially portable; every random decision in the library flows through it
// so that outputs are identical across compilers and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform integer in [0, bound) by rejection sampling (no modulo bias).
  // bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    // Fisher-Yates, walking down from the back.
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// The SplitMix64 output finalizer applied to a single word.
std::uint64_t mix64(std::uint64_t x);

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// Seed for a named randomized step: mix64(base ^ fnv1a64(label)). A single
// global seed therefore reproduces a whole pipeline as long as every step
// uses a stable label.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

// Hex rendering of fnv1a64, used as the content hash in manifests.
std::string content_hash(std::string_view bytes);

// Identity permutation of [0, n) shuffled with the given seed.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace syneval
