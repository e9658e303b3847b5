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

// Permutation families and minwise / b-bit sketching.
//
// Two realizations of a random permutation of {0, ..., D-1}:
//  - exact:  a Fisher-Yates table per member, for D <= 2^24;
//  - affine: x -> (a*x + c) mod P with P the smallest prime >= D. Each map
//            is a bijection on {0, ..., P-1} but the family is not minwise
//            independent, so collision rates carry a small bias.
// Member j of either kind depends only on (seed, j), so a family can be
// generated one member at a time with identical results.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/random.hpp"
#include "bbit/sketch.hpp"
#include "bbit/sketch_file.hpp"

namespace bbit {

inline constexpr std::uint64_t kMaxExactUniverse = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxAffineUniverse = std::uint64_t{1} << 62;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t member_seed(std::uint64_t family_seed, std::uint64_t j) noexcept {
  return derive_seed(family_seed, {0x7065726dULL, j});
}

inline std::vector<std::uint32_t> exact_member_table(std::uint64_t universe_size, std::uint64_t seed) {
  std::vector<std::uint32_t> table(universe_size);
  std::iota(table.begin(), table.end(), std::uint32_t{0});
  Rng rng(seed);
  shuffle(table.begin(), table.end(), rng);
  return table;
}

struct AffineMap {
  std::uint64_t a;
  std::uint64_t c;
};

inline AffineMap affine_member(std::uint64_t prime, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t a = 1 + uniform_below(rng, prime - 1);
  const std::uint64_t c = uniform_below(rng, prime);
  return {a, c};
}

inline void check_family_args(FamilyKind kind, std::uint64_t k, std::uint64_t universe_size) {
  if (k == 0) throw InvalidArgument("a permutation family needs k >= 1");
  if (universe_size < 2) throw InvalidArgument("universe size must be at least 2");
  if (kind == FamilyKind::exact && universe_size > kMaxExactUniverse) {
    throw InvalidArgument("exact permutations need universe size <= 2^24; use the affine family for D = " +
                          std::to_string(universe_size));
  }
  if (kind == FamilyKind::affine && universe_size > kMaxAffineUniverse) {
    throw InvalidArgument("affine family supports universe size <= 2^62");
  }
}

}  // namespace detail

/// Smallest prime >= n.
inline std::uint64_t next_prime(std::uint64_t n) noexcept {
  if (n <= 2) return 2;
  std::uint64_t p = n | 1;
  while (!detail::is_prime(p)) p += 2;
  return p;
}

/// k seeded pseudorandom bijections. Immutable once built.
class PermutationFamily {
 public:
  static PermutationFamily build(FamilyKind kind, std::uint64_t k, std::uint64_t universe_size,
                                 std::uint64_t seed) {
    detail::check_family_args(kind, k, universe_size);
    PermutationFamily f;
    f.kind_ = kind;
    f.universe_size_ = universe_size;
    f.seed_ = seed;
    if (kind == FamilyKind::exact) {
      f.range_ = universe_size;
      f.tables_.reserve(k);
      for (std::uint64_t j = 0; j < k; ++j) {
        f.tables_.push_back(detail::exact_member_table(universe_size, detail::member_seed(seed, j)));
      }
    } else {
      f.range_ = next_prime(universe_size);
      f.maps_.reserve(k);
      for (std::uint64_t j = 0; j < k; ++j) f.maps_.push_back(detail::affine_member(f.range_, detail::member_seed(seed, j)));
    }
    return f;
  }

  FamilyKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return kind_ == FamilyKind::exact ? tables_.size() : maps_.size(); }
  std::uint64_t universe_size() const noexcept { return universe_size_; }
  std::uint64_t seed() const noexcept { return seed_; }
  FamilyTag tag() const noexcept { return {seed_, universe_size_}; }

  /// Size of every member's domain and codomain: D (exact) or P (affine).
  std::uint64_t range() const noexcept { return range_; }

  std::uint64_t apply(std::size_t j, std::uint64_t x) const noexcept {
    if (kind_ == FamilyKind::exact) return tables_[j][x];
    return (detail::mulmod(maps_[j].a, x, range_) + maps_[j].c) % range_;
  }

  /// Fisher-Yates table of member j (exact families only).
  std::span<const std::uint32_t> table(std::size_t j) const { return tables_.at(j); }

  std::uint64_t affine_multiplier(std::size_t j) const { return maps_.at(j).a; }
  std::uint64_t affine_offset(std::size_t j) const { return maps_.at(j).c; }

 private:
  PermutationFamily() = default;

  FamilyKind kind_ = FamilyKind::exact;
  std::uint64_t universe_size_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t range_ = 0;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::vector<detail::AffineMap> maps_;
};

inline PermutationFamily build_family(FamilyKind kind, std::uint64_t k, std::uint64_t universe_size,
                                      std::uint64_t seed) {
  return PermutationFamily::build(kind, k, universe_size, seed);
}

/// values[j] = min over x in S of pi_j(x). O(k * |S|).
inline MinwiseSketch minhash(const SparseBinarySet& set, const PermutationFamily& family) {
  if (set.universe_size() != family.universe_size()) {
    throw InvalidArgument("set universe size " + std::to_string(set.universe_size()) +
                          " differs from family universe size " + std::to_string(family.universe_size()));
  }
  MinwiseSketch out{std::vector<std::uint64_t>(family.size()), family.tag()};
  const auto idx = set.indices();
  for (std::size_t j = 0; j < family.size(); ++j) {
    std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
    if (family.kind() == FamilyKind::exact) {
      const auto t = family.table(j);
      for (auto x : idx) m = std::min<std::uint64_t>(m, t[x]);
    } else {
      for (auto x : idx) m = std::min(m, family.apply(j, x));
    }
    out.values[j] = m;
  }
  return out;
}

/// Keeps the lowest b bits of every minimum.
inline BBitSketch truncate(const MinwiseSketch& sketch, unsigned b) {
  check_bits(b);
  BBitSketch out{b, std::vector<std::uint16_t>(sketch.size()), sketch.family};
  const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
  for (std::size_t j = 0; j < sketch.size(); ++j) out.values[j] = static_cast<std::uint16_t>(sketch.values[j] & mask);
  return out;
}

namespace detail {

inline std::vector<std::uint64_t> cardinalities(const LabeledDataset& d) {
  std::vector<std::uint64_t> c;
  c.reserve(d.size());
  for (const auto& s : d.samples) c.push_back(s.cardinality());
  return c;
}

}  // namespace detail

/// Sketches every sample under one family. Members are generated and
/// discarded one at a time, so peak memory is a single permutation table
/// plus the packed output.
inline SketchFile sketch_dataset(const LabeledDataset& d, std::uint64_t k, unsigned b, FamilyKind kind,
                                 std::uint64_t seed) {
  validate(d);
  check_bits(b);
  detail::check_family_args(kind, k, d.universe_size);
  SketchFile out(k, b, seed, d.universe_size, detail::cardinalities(d));
  const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
  const std::uint64_t prime = kind == FamilyKind::affine ? next_prime(d.universe_size) : 0;
  for (std::uint64_t j = 0; j < k; ++j) {
    const auto mseed = detail::member_seed(seed, j);
    if (kind == FamilyKind::exact) {
      const auto table = detail::exact_member_table(d.universe_size, mseed);
      for (std::size_t i = 0; i < d.size(); ++i) {
        std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
        for (auto x : d.samples[i].indices()) m = std::min(m, table[x]);
        out.set_value(i, j, static_cast<std::uint16_t>(m & mask));
      }
    } else {
      const auto map = detail::affine_member(prime, mseed);
      for (std::size_t i = 0; i < d.size(); ++i) {
        std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
        for (auto x : d.samples[i].indices()) m = std::min(m, (detail::mulmod(map.a, x, prime) + map.c) % prime);
        out.set_value(i, j, static_cast<std::uint16_t>(m & mask));
      }
    }
  }
  return out;
}

/// Same result as the streaming overload, using an already built family.
inline SketchFile sketch_dataset(const LabeledDataset& d, const PermutationFamily& family, unsigned b) {
  validate(d);
  check_bits(b);
  SketchFile out(family.size(), b, family.seed(), d.universe_size, detail::cardinalities(d));
  for (std::size_t i = 0; i < d.size(); ++i) out.set_row(i, truncate(minhash(d.samples[i], family), b));
  return out;
}

}  // namespace bbit
