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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "bbit/estimation.hpp"
#include "bbit/sketching.hpp"
#include "oracles.hpp"

namespace bbit {
namespace {

bool is_trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(NextPrime, MatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 3000; ++n) {
    std::uint64_t p = std::max<std::uint64_t>(n, 2);
    while (!is_trial_division_prime(p)) ++p;
    ASSERT_EQ(next_prime(n), p) << n;
  }
  EXPECT_EQ(next_prime(10), 11u);
  EXPECT_EQ(next_prime((std::uint64_t{1} << 61) - 1), (std::uint64_t{1} << 61) - 1);  // Mersenne prime
}

TEST(PermutationFamily, ExactMembersAreBijections) {
  const auto f = build_family(FamilyKind::exact, 5, 4, 123);
  ASSERT_EQ(f.size(), 5u);
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::vector<std::uint64_t> image;
    for (std::uint64_t x = 0; x < 4; ++x) image.push_back(f.apply(j, x));
    std::sort(image.begin(), image.end());
    EXPECT_EQ(image, (std::vector<std::uint64_t>{0, 1, 2, 3}));
  }
}

TEST(PermutationFamily, BijectiveExhaustivelyForSmallUniverses) {
  for (auto kind : {FamilyKind::exact, FamilyKind::affine}) {
    for (std::uint64_t d : {2ull, 3ull, 10ull, 97ull, 256ull, 1000ull}) {
      const auto f = build_family(kind, 8, d, d * 31 + 7);
      const auto range = f.range();
      for (std::size_t j = 0; j < f.size(); ++j) {
        std::vector<bool> hit(range, false);
        for (std::uint64_t x = 0; x < range; ++x) {
          const auto y = f.apply(j, x);
          ASSERT_LT(y, range);
          ASSERT_FALSE(hit[y]);
          hit[y] = true;
        }
      }
    }
  }
}

TEST(PermutationFamily, AffineUsesSmallestPrime) {
  const auto f = build_family(FamilyKind::affine, 20, 10, 3);
  EXPECT_EQ(f.range(), 11u);
  for (std::size_t j = 0; j < f.size(); ++j) {
    EXPECT_GE(f.affine_multiplier(j), 1u);
    EXPECT_LT(f.affine_multiplier(j), 11u);
    EXPECT_LT(f.affine_offset(j), 11u);
    std::vector<std::uint64_t> image;
    for (std::uint64_t x = 0; x < 11; ++x) image.push_back(f.apply(j, x));
    std::sort(image.begin(), image.end());
    EXPECT_EQ(std::unique(image.begin(), image.end()) - image.begin(), 11);
  }
}

TEST(PermutationFamily, DeterministicInSeed) {
  for (auto kind : {FamilyKind::exact, FamilyKind::affine}) {
    const auto a = build_family(kind, 6, 500, 99);
    const auto b = build_family(kind, 6, 500, 99);
    const auto c = build_family(kind, 6, 500, 100);
    bool differs = false;
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::uint64_t x = 0; x < 500; ++x) {
        ASSERT_EQ(a.apply(j, x), b.apply(j, x));
        differs |= a.apply(j, x) != c.apply(j, x);
      }
    }
    EXPECT_TRUE(differs);
  }
}

TEST(PermutationFamily, RejectsBadArguments) {
  EXPECT_THROW(build_family(FamilyKind::exact, 0, 10, 1), InvalidArgument);
  EXPECT_THROW(build_family(FamilyKind::exact, 1, 1, 1), InvalidArgument);
  try {
    build_family(FamilyKind::exact, 1, kMaxExactUniverse + 1, 1);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("affine"), std::string::npos);
  }
  EXPECT_NO_THROW(build_family(FamilyKind::affine, 1, kMaxExactUniverse + 1, 1));
}

TEST(Minhash, FullUniverseGivesZero) {
  std::vector<std::uint64_t> all(64);
  std::iota(all.begin(), all.end(), 0);
  const SparseBinarySet s(all, 64);
  const auto f = build_family(FamilyKind::exact, 30, 64, 5);
  for (auto v : minhash(s, f).values) EXPECT_EQ(v, 0u);
}

TEST(Minhash, IdenticalSetsGiveIdenticalSketches) {
  Rng rng(8);
  const auto s = oracle::random_set(rng, 1000, 40);
  for (auto kind : {FamilyKind::exact, FamilyKind::affine}) {
    const auto f = build_family(kind, 50, 1000, 17);
    const auto a = minhash(s, f);
    const auto b = minhash(SparseBinarySet(s), f);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(minwise_estimate(a, b), 1.0);
  }
}

TEST(Minhash, MatchesBruteForceMinimum) {
  Rng rng(4);
  const auto f = build_family(FamilyKind::affine, 10, 5000, 2);
  const auto s = oracle::random_set(rng, 5000, 30);
  const auto sk = minhash(s, f);
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::uint64_t m = ~0ull;
    for (auto x : s.indices()) m = std::min(m, f.apply(j, x));
    EXPECT_EQ(sk.values[j], m);
    EXPECT_LT(sk.values[j], f.range());
  }
}

TEST(Minhash, UniverseMismatchIsAnError) {
  const auto f = build_family(FamilyKind::exact, 3, 100, 1);
  EXPECT_THROW(minhash(SparseBinarySet({1, 2}, 50), f), InvalidArgument);
}

TEST(Minhash, CollisionRateMatchesResemblance) {
  // 10^4 independent exact permutations; the collision indicator is
  // Bernoulli(R), so the mean lands within 3 sigma of R.
  Rng rng(2024);
  const std::uint64_t D = 512;
  const auto [s1, s2] = oracle::set_pair(rng, D, 60, 80, 35);
  const double R = oracle::jaccard(s1, s2);
  ASSERT_NEAR(R, 35.0 / 105.0, 1e-15);
  const auto f = build_family(FamilyKind::exact, 10000, D, 77);
  const double hat = minwise_estimate(minhash(s1, f), minhash(s2, f));
  EXPECT_LE(std::abs(hat - R), 3 * std::sqrt(R * (1 - R) / 1e4));
}

TEST(Minhash, ContainmentIsMonotone) {
  Rng rng(6);
  const auto f = build_family(FamilyKind::affine, 40, 3000, 8);
  const auto g = build_family(FamilyKind::exact, 40, 3000, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto big = oracle::random_set(rng, 3000, 60);
    std::vector<std::uint64_t> sub;
    for (auto x : big.indices()) {
      if (rng() & 1) sub.push_back(x);
    }
    if (sub.empty()) sub.push_back(big.indices()[0]);
    const SparseBinarySet small(sub, 3000);
    for (const auto* fam : {&f, &g}) {
      const auto zb = minhash(big, *fam);
      const auto zs = minhash(small, *fam);
      for (std::size_t j = 0; j < fam->size(); ++j) EXPECT_LE(zb.values[j], zs.values[j]);
    }
  }
}

TEST(Truncate, WorkedExample) {
  const MinwiseSketch z{{12013, 25964, 20191}, {}};
  EXPECT_EQ(truncate(z, 2).values, (std::vector<std::uint16_t>{1, 0, 3}));
}

TEST(Truncate, IdentityWhenBitsCoverValues) {
  const MinwiseSketch z{{0, 1, 65535, 4242}, {}};
  EXPECT_EQ(truncate(z, 16).values, (std::vector<std::uint16_t>{0, 1, 65535, 4242}));
  EXPECT_EQ(truncate(MinwiseSketch{{7}, {}}, 1).values, (std::vector<std::uint16_t>{1}));
}

TEST(Truncate, RejectsBitsOutOfRange) {
  const MinwiseSketch z{{1}, {}};
  EXPECT_THROW(truncate(z, 0), InvalidArgument);
  EXPECT_THROW(truncate(z, 17), InvalidArgument);
}

TEST(Truncate, PreservesEquality) {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const auto v = rng();
    const auto w = (rng() & 1) ? v : rng();
    for (unsigned b = 1; b <= 16; ++b) {
      const auto tv = truncate(MinwiseSketch{{v}, {}}, b).values[0];
      const auto tw = truncate(MinwiseSketch{{w}, {}}, b).values[0];
      if (v == w) {
        EXPECT_EQ(tv, tw);
      }
      EXPECT_EQ(tv, v % (1ull << b));
    }
  }
}

LabeledDataset small_dataset(Rng& rng, std::size_t n, std::uint64_t D) {
  LabeledDataset d;
  d.universe_size = D;
  for (std::size_t i = 0; i < n; ++i) {
    d.samples.push_back(oracle::random_set(rng, D, 1 + uniform_below(rng, 30)));
    d.labels.push_back(i % 2 ? 1 : -1);
  }
  return d;
}

TEST(SketchDataset, ShapeAtK200B8) {
  Rng rng(1);
  const auto d = small_dataset(rng, 5, 2000);
  const auto sk = sketch_dataset(d, 200, 8, FamilyKind::exact, 3);
  EXPECT_EQ(sk.rows(), 5u);
  EXPECT_EQ(sk.k(), 200u);
  EXPECT_EQ(sk.row_bytes(), 200u);
  EXPECT_EQ(sk.payload().size(), 1000u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(sk.cardinalities()[i], d.samples[i].cardinality());
}

TEST(SketchDataset, SingleValueIsTruncatedMinimum) {
  Rng rng(2);
  const auto d = small_dataset(rng, 1, 70000);
  for (auto kind : {FamilyKind::exact, FamilyKind::affine}) {
    const auto sk = sketch_dataset(d, 1, 16, kind, 5);
    const auto f = build_family(kind, 1, 70000, 5);
    EXPECT_EQ(sk.value(0, 0), truncate(minhash(d.samples[0], f), 16).values[0]);
  }
}

TEST(SketchDataset, StreamingMatchesBuiltFamily) {
  Rng rng(3);
  const auto d = small_dataset(rng, 12, 4096);
  for (auto kind : {FamilyKind::exact, FamilyKind::affine}) {
    for (unsigned b : {1u, 3u, 8u, 16u}) {
      const auto streamed = sketch_dataset(d, 25, b, kind, 44);
      const auto built = sketch_dataset(d, build_family(kind, 25, 4096, 44), b);
      EXPECT_EQ(streamed, built);
    }
  }
}

TEST(SketchDataset, DeterministicPayload) {
  Rng rng(4);
  const auto d = small_dataset(rng, 20, 3000);
  const auto a = sketch_dataset(d, 64, 4, FamilyKind::exact, 8);
  const auto b = sketch_dataset(d, 64, 4, FamilyKind::exact, 8);
  const auto c = sketch_dataset(d, 64, 4, FamilyKind::exact, 9);
  EXPECT_TRUE(std::equal(a.payload().begin(), a.payload().end(), b.payload().begin(), b.payload().end()));
  EXPECT_FALSE(std::equal(a.payload().begin(), a.payload().end(), c.payload().begin(), c.payload().end()));
}

}  // namespace
}  // namespace bbit
