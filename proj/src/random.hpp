/*
 * Copyright 2026 The cutsynth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CUTSYNTH_RANDOM_HPP_
#define CUTSYNTH_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace cutsynth {

// Deterministic random stream. std::mt19937_64 is fully specified by the
// standard; the conversions to real and bounded integer values are done here
// rather than through <random> distributions, whose output is
// implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextBits() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer in [0, n).
  std::uint32_t UniformIndex(std::uint32_t n) {
    return static_cast<std::uint32_t>(Uniform01() * n);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stable seed for one (source, task) pair; independent of scheduling order.
inline std::uint64_t DeriveStreamSeed(std::uint64_t global_seed,
                                      std::string_view source_id,
                                      std::uint64_t task_index) {
  std::uint64_t h = SplitMix64(global_seed);
  h = SplitMix64(h ^ Fnv1a64(source_id));
  return SplitMix64(h ^ task_index);
}

}  // namespace cutsynth

#endif  // CUTSYNTH_RANDOM_HPP_
