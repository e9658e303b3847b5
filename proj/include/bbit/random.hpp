// Copyright 2026 The bbit Authors
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

// Portable seeded randomness. std::shuffle and the std distributions are
// implementation-defined, so bounded draws and shuffles are spelled out here
// to keep every seeded result identical across standard libraries.

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <random>
#include <utility>

namespace bbit {

using Rng = std::mt19937_64;

/// One step of the splitmix64 sequence.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent child seed from a master seed and a tag path.
/// The result depends only on its arguments, never on call order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t state = master;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t t : tags) {
    state = out ^ (t * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL);
    out = splitmix64(state);
  }
  return out;
}

/// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-and-reject).
template <class Engine>
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform real in [0, 1) with 53 random bits.
template <class Engine>
double uniform_real(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <std::random_access_iterator It, class Engine>
void shuffle(It first, It last, Engine& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const std::uint64_t j = uniform_below(rng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace bbit
