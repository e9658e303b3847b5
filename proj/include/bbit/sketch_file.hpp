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

// Compact on-disk storage for b-bit sketches.
//
// Layout, all integers little-endian:
//
//   offset  size      field
//   0       8         magic "BBITSKCH"
//   8       4         version (1)
//   12      8         n, sample count
//   20      4         k, values per sample
//   24      1         b, bits per value, 1..16
//   25      8         family seed
//   33      8         D, universe size
//   41      8*n       cardinality of each source set
//   41+8n   n*rb      payload, rb = ceil(k*b/8) bytes per sample
//
// Each payload row is packed per bitpack.hpp and padded to a whole byte so
// any sample can be located directly.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bbit/bitpack.hpp"
#include "bbit/error.hpp"
#include "bbit/sketch.hpp"

namespace bbit {

inline constexpr std::array<char, 8> kSketchMagic{'B', 'B', 'I', 'T', 'S', 'K', 'C', 'H'};
inline constexpr std::uint32_t kSketchVersion = 1;

/// Payload size of a sketch file: n * ceil(k*b/8) bytes.
constexpr std::uint64_t sketch_payload_bytes(std::uint64_t n, std::uint64_t k, unsigned b) noexcept {
  return n * packed_row_bytes(k, b);
}

namespace detail {

template <class T>
void put_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& in, const char* field) {
  std::array<unsigned char, sizeof(T)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw FormatError(std::string("truncated stream while reading ") + field);
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return static_cast<T>(v);
}

inline void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_le(out, bits);
}

inline double get_f64(std::istream& in, const char* field) {
  const auto bits = get_le<std::uint64_t>(in, field);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

inline void read_exact(std::istream& in, std::span<std::uint8_t> dst, const char* field) {
  constexpr std::size_t kChunk = std::size_t{1} << 20;
  for (std::size_t off = 0; off < dst.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, dst.size() - off);
    if (!in.read(reinterpret_cast<char*>(dst.data() + off), static_cast<std::streamsize>(len))) {
      throw FormatError(std::string("truncated stream while reading ") + field);
    }
  }
}

}  // namespace detail

/// n b-bit sketch rows held bit-packed in memory, plus the metadata needed
/// to interpret them (family seed, universe size, source cardinalities).
class SketchFile {
 public:
  SketchFile(std::uint64_t k, unsigned b, std::uint64_t seed, std::uint64_t universe_size,
             std::vector<std::uint64_t> cardinalities)
      : k_(k), b_(b), seed_(seed), universe_size_(universe_size), cardinalities_(std::move(cardinalities)) {
    check_bits(b);
    if (k == 0 || k > 0xffffffffULL) throw InvalidArgument("k must lie in [1, 2^32)");
    payload_.assign(sketch_payload_bytes(cardinalities_.size(), k_, b_), 0);
  }

  std::uint64_t rows() const noexcept { return cardinalities_.size(); }
  std::uint64_t k() const noexcept { return k_; }
  unsigned bits() const noexcept { return b_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t universe_size() const noexcept { return universe_size_; }
  FamilyTag family() const noexcept { return {seed_, universe_size_}; }
  std::span<const std::uint64_t> cardinalities() const noexcept { return cardinalities_; }
  std::span<const std::uint8_t> payload() const noexcept { return payload_; }
  std::uint64_t row_bytes() const noexcept { return packed_row_bytes(k_, b_); }

  std::span<const std::uint8_t> packed_row(std::size_t i) const noexcept {
    return std::span<const std::uint8_t>(payload_).subspan(i * row_bytes(), row_bytes());
  }

  std::uint16_t value(std::size_t i, std::size_t j) const noexcept { return unpack_value(packed_row(i), j, b_); }

  void set_value(std::size_t i, std::size_t j, std::uint16_t v) {
    if (b_ < 16 && v >= (1u << b_)) throw InvalidArgument("value does not fit in b bits");
    pack_value(std::span<std::uint8_t>(payload_).subspan(i * row_bytes(), row_bytes()), j, b_, v);
  }

  BBitSketch row(std::size_t i) const {
    BBitSketch s{b_, std::vector<std::uint16_t>(k_), family()};
    const auto packed = packed_row(i);
    for (std::size_t j = 0; j < k_; ++j) s.values[j] = unpack_value(packed, j, b_);
    return s;
  }

  void set_row(std::size_t i, const BBitSketch& s) {
    if (s.bits != b_ || s.size() != k_) throw InvalidArgument("row shape differs from sketch file (k, b)");
    for (std::size_t j = 0; j < k_; ++j) set_value(i, j, s.values[j]);
  }

  /// Copy holding only the selected rows, in the given order.
  SketchFile select(std::span<const std::size_t> rows) const {
    std::vector<std::uint64_t> cards;
    cards.reserve(rows.size());
    for (auto i : rows) cards.push_back(cardinalities_.at(i));
    SketchFile out(k_, b_, seed_, universe_size_, std::move(cards));
    const auto rb = row_bytes();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::memcpy(out.payload_.data() + r * rb, payload_.data() + rows[r] * rb, rb);
    }
    return out;
  }

  /// Keeps the lowest `b` bits of every value (b <= bits()).
  SketchFile truncated(unsigned b) const {
    check_bits(b);
    if (b > b_) throw InvalidArgument("cannot truncate to more bits than stored");
    SketchFile out(k_, b, seed_, universe_size_, cardinalities_);
    const std::uint16_t mask = static_cast<std::uint16_t>((1u << b) - 1);
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = 0; j < k_; ++j) out.set_value(i, j, value(i, j) & mask);
    }
    return out;
  }

  void write(std::ostream& out) const {
    out.write(kSketchMagic.data(), kSketchMagic.size());
    detail::put_le<std::uint32_t>(out, kSketchVersion);
    detail::put_le<std::uint64_t>(out, rows());
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(k_));
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(b_));
    detail::put_le<std::uint64_t>(out, seed_);
    detail::put_le<std::uint64_t>(out, universe_size_);
    for (auto f : cardinalities_) detail::put_le<std::uint64_t>(out, f);
    out.write(reinterpret_cast<const char*>(payload_.data()), static_cast<std::streamsize>(payload_.size()));
    if (!out) throw IoError("failed writing sketch file");
  }

  static SketchFile read(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size())) throw FormatError("truncated stream while reading magic");
    if (magic != kSketchMagic) throw FormatError("not a sketch file (bad magic)");
    const auto version = detail::get_le<std::uint32_t>(in, "version");
    if (version != kSketchVersion) throw FormatError("unsupported sketch file version " + std::to_string(version));
    const auto n = detail::get_le<std::uint64_t>(in, "n");
    const auto k = detail::get_le<std::uint32_t>(in, "k");
    const auto b = detail::get_le<std::uint8_t>(in, "b");
    const auto seed = detail::get_le<std::uint64_t>(in, "seed");
    const auto universe = detail::get_le<std::uint64_t>(in, "universe size");
    if (b < 1 || b > kMaxBits) throw FormatError("bits per value " + std::to_string(b) + " outside [1, 16]");
    if (k == 0) throw FormatError("k is zero");
    if (n > (std::uint64_t{1} << 40)) throw FormatError("implausible sample count " + std::to_string(n));
    std::vector<std::uint64_t> cards;
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto f = detail::get_le<std::uint64_t>(in, "cardinalities");
      if (f == 0 || f > universe) throw FormatError("cardinality of sample " + std::to_string(i) + " out of range");
      cards.push_back(f);
    }
    SketchFile out(k, b, seed, universe, std::move(cards));
    detail::read_exact(in, out.payload_, "payload");
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after payload");
    return out;
  }

  friend bool operator==(const SketchFile&, const SketchFile&) = default;

 private:
  std::uint64_t k_;
  unsigned b_;
  std::uint64_t seed_;
  std::uint64_t universe_size_;
  std::vector<std::uint64_t> cardinalities_;
  std::vector<std::uint8_t> payload_;
};

/// True when the stream starts with the sketch file magic. Leaves the
/// stream position unchanged.
inline bool looks_like_sketch_file(std::istream& in) {
  const auto pos = in.tellg();
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  const bool ok = in.gcount() == 8 && magic == kSketchMagic;
  in.clear();
  in.seekg(pos);
  return ok;
}

}  // namespace bbit
