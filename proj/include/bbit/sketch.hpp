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

#include <cstdint>
#include <string_view>
#include <vector>

#include "bbit/error.hpp"

namespace bbit {

inline constexpr unsigned kMaxBits = 16;

enum class FamilyKind : std::uint8_t { exact = 0, affine = 1 };

inline std::string_view to_string(FamilyKind kind) noexcept {
  return kind == FamilyKind::exact ? "exact" : "affine";
}

inline FamilyKind parse_family_kind(std::string_view s) {
  if (s == "exact") return FamilyKind::exact;
  if (s == "affine") return FamilyKind::affine;
  throw InvalidArgument("unknown permutation family '" + std::string(s) + "' (expected exact or affine)");
}

inline void check_bits(unsigned b) {
  if (b < 1 || b > kMaxBits) {
    throw InvalidArgument("bits per value must lie in [1, 16], got " + std::to_string(b));
  }
}

/// Identifies the permutation family a sketch was drawn with. Sketches are
/// only comparable when these match.
struct FamilyTag {
  std::uint64_t seed = 0;
  std::uint64_t universe_size = 0;
  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// k hashed minima of one set, values[j] = min(pi_j(S)).
struct MinwiseSketch {
  std::vector<std::uint64_t> values;
  FamilyTag family;

  std::size_t size() const noexcept { return values.size(); }
};

/// The lowest `bits` bits of each minimum.
struct BBitSketch {
  unsigned bits = 1;
  std::vector<std::uint16_t> values;
  FamilyTag family;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const BBitSketch&, const BBitSketch&) = default;
};

}  // namespace bbit
