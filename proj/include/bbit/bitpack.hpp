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

// Little-endian bit packing of b-bit values. Value j of a row occupies bits
// [j*b, (j+1)*b), where bit t of the row is bit (t % 8) of byte t / 8.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>

namespace bbit {

/// Bytes needed for one row of k values of b bits.
constexpr std::uint64_t packed_row_bytes(std::uint64_t k, unsigned b) noexcept {
  return (k * b + 7) / 8;
}

inline std::uint16_t unpack_value(std::span<const std::uint8_t> row, std::size_t j, unsigned b) noexcept {
  const std::size_t bit = j * b;
  const std::size_t first = bit / 8;
  const std::size_t last = (bit + b - 1) / 8;
  std::uint32_t window = 0;
  for (std::size_t i = first; i <= last; ++i) window |= std::uint32_t{row[i]} << (8 * (i - first));
  return static_cast<std::uint16_t>((window >> (bit % 8)) & ((1u << b) - 1));
}

inline void pack_value(std::span<std::uint8_t> row, std::size_t j, unsigned b, std::uint16_t value) noexcept {
  assert(b == 16 || value < (1u << b));
  const std::size_t bit = j * b;
  const std::size_t first = bit / 8;
  const std::size_t last = (bit + b - 1) / 8;
  const unsigned shift = bit % 8;
  const std::uint32_t mask = ((1u << b) - 1) << shift;
  const std::uint32_t bits = std::uint32_t{value} << shift;
  for (std::size_t i = first; i <= last; ++i) {
    const unsigned s = 8 * static_cast<unsigned>(i - first);
    const auto m = static_cast<std::uint8_t>(mask >> s);
    row[i] = static_cast<std::uint8_t>((row[i] & ~m) | ((bits >> s) & m));
  }
}

}  // namespace bbit
