// Copyright 2026 The FairCover Authors
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

#ifndef FMC_RNG_HPP_
#define FMC_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace fmc {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t HashTag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sub-seed for (seed, purpose, index). Every random stream in the library is
// derived through this function so a single user seed reproduces a run.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view tag,
                                   std::uint64_t index = 0) {
  return Mix64(Mix64(seed ^ HashTag(tag)) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

// Counter-based generator: the i-th output is Mix64(key + i * golden).
// Output is identical on every platform and standard library.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t NextU64() {
    return Mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t NextBelow(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection.
    while (true) {
      const std::uint64_t x = NextU64();
      const unsigned __int128 prod = static_cast<unsigned __int128>(x) * bound;
      const auto low = static_cast<std::uint64_t>(prod);
      if (low >= (-bound) % bound) return static_cast<std::uint64_t>(prod >> 64);
    }
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace fmc

#endif  // FMC_RNG_HPP_
