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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bbit/estimation.hpp"
#include "bbit/sketching.hpp"
#include "oracles.hpp"
#include "stat_util.hpp"

namespace bbit {
namespace {

TEST(Resemblance, Examples) {
  const SparseBinarySet a({0, 1, 2}, 10), b({1, 2, 3}, 10), c({7, 8}, 10);
  EXPECT_EQ(resemblance(a, a), 1.0);
  EXPECT_EQ(resemblance(a, c), 0.0);
  EXPECT_EQ(resemblance(a, b), 0.5);
  EXPECT_EQ(oracle::jaccard(a, b), 0.5);
  const auto r = resemblance_ratio(a, b);
  EXPECT_EQ(r.num, 2u);
  EXPECT_EQ(r.den, 4u);
  EXPECT_THROW(resemblance(a, SparseBinarySet({1}, 11)), InvalidArgument);
}

TEST(Resemblance, MatchesSetOracleAndIsSymmetric) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const auto a = oracle::random_set(rng, 60, 1 + uniform_below(rng, 30));
    const auto b = oracle::random_set(rng, 60, 1 + uniform_below(rng, 30));
    EXPECT_DOUBLE_EQ(resemblance(a, b), oracle::jaccard(a, b));
    EXPECT_EQ(resemblance(a, b), resemblance(b, a));
  }
}

TEST(Resemblance, JaccardDistanceIsAMetricExactly) {
  // 1 - a/u <= (1 - a'/u') + (1 - a''/u''), compared exactly in integers.
  Rng rng(2);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t D = 4 + uniform_below(rng, 12);
    const auto i = oracle::random_set(rng, D, 1 + uniform_below(rng, D));
    const auto j = oracle::random_set(rng, D, 1 + uniform_below(rng, D));
    const auto l = oracle::random_set(rng, D, 1 + uniform_below(rng, D));
    const auto ij = resemblance_ratio(i, j), il = resemblance_ratio(i, l), lj = resemblance_ratio(l, j);
    using i128 = __int128;
    const i128 lhs = static_cast<i128>(ij.den - ij.num) * il.den * lj.den;
    const i128 rhs = static_cast<i128>(il.den - il.num) * ij.den * lj.den + static_cast<i128>(lj.den - lj.num) * ij.den * il.den;
    EXPECT_LE(lhs, rhs);
  }
}

TEST(MinwiseEstimate, Extremes) {
  const MinwiseSketch a{{1, 2, 3}, {5, 10}}, b{{4, 5, 6}, {5, 10}};
  EXPECT_EQ(minwise_estimate(a, a), 1.0);
  EXPECT_EQ(minwise_estimate(a, b), 0.0);
  EXPECT_EQ(minwise_estimate(a, MinwiseSketch{{1, 9, 3}, {5, 10}}), 2.0 / 3.0);
}

TEST(MinwiseEstimate, RejectsMismatchedSketches) {
  const MinwiseSketch a{{1, 2, 3}, {5, 10}};
  EXPECT_THROW(minwise_estimate(a, MinwiseSketch{{1, 2}, {5, 10}}), InvalidArgument);
  EXPECT_THROW(minwise_estimate(a, MinwiseSketch{{1, 2, 3}, {6, 10}}), InvalidArgument);
  EXPECT_THROW(minwise_estimate(a, MinwiseSketch{{1, 2, 3}, {5, 11}}), InvalidArgument);
}

TEST(MinwiseEstimate, UnbiasedOverFreshFamilies) {
  Rng rng(3);
  const std::uint64_t D = 1024;
  const auto [s1, s2] = oracle::set_pair(rng, D, 50, 70, 30);
  const double R = resemblance(s1, s2);
  const std::size_t families = 1000, k = 20;
  const std::vector<SparseBinarySet> sets{s1, s2};
  const auto z = testing::exact_minima(sets, families * k, 31);
  double sum = 0;
  for (std::size_t f = 0; f < families; ++f) {
    std::size_t m = 0;
    for (std::size_t j = f * k; j < (f + 1) * k; ++j) m += z[0][j] == z[1][j];
    sum += static_cast<double>(m) / k;
  }
  EXPECT_LE(std::abs(sum / families - R), 3 * std::sqrt(R * (1 - R) / (families * k)));
}

TEST(MinwiseVariance, ClosedForm) {
  EXPECT_EQ(minwise_variance(0.0, 10), 0.0);
  EXPECT_EQ(minwise_variance(1.0, 10), 0.0);
  EXPECT_DOUBLE_EQ(minwise_variance(0.5, 100), 0.0025);
  EXPECT_THROW(minwise_variance(1.5, 10), InvalidArgument);
  EXPECT_THROW(minwise_variance(0.5, 0), InvalidArgument);
}

TEST(MinwiseVariance, MatchesMonteCarlo) {
  Rng rng(4);
  const std::uint64_t D = 256;
  const auto [s1, s2] = oracle::set_pair(rng, D, 30, 30, 20);  // R = 0.5
  const double R = resemblance(s1, s2);
  ASSERT_EQ(R, 0.5);
  const std::size_t trials = 2000, k = 50;
  const std::vector<SparseBinarySet> sets{s1, s2};
  const auto z = testing::exact_minima(sets, trials * k, 9, 2000);
  std::vector<double> est;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = 0;
    for (std::size_t j = t * k; j < (t + 1) * k; ++j) m += z[0][j] == z[1][j];
    est.push_back(static_cast<double>(m) / k);
  }
  const double v = minwise_variance(R, k);
  EXPECT_LE(std::abs(testing::variance(est) - v) / v, 0.25);
}

TEST(CollisionProbability, IdenticalSetsCollideSurely) {
  for (unsigned b = 1; b <= 16; ++b) {
    const auto p = bbit_collision_probability(300, 300, 300, 5000, b);
    EXPECT_EQ(p.correction.C1, p.correction.C2);
    EXPECT_DOUBLE_EQ(p.probability, 1.0);
  }
}

TEST(CollisionProbability, HalfDensityOneBit) {
  // r1 = r2 = 1/2, b = 1: A = (1/2 * 1/2) / (1 - 1/4) = 1/3 and with R = 1/2,
  // P = 1/3 + 2/3 * 1/2 = 2/3.
  const auto p = bbit_collision_probability(6, 6, 4, 12, 1);
  EXPECT_DOUBLE_EQ(p.resemblance, 0.5);
  EXPECT_NEAR(p.correction.A1, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.correction.A2, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.probability, 2.0 / 3.0, 1e-15);
}

TEST(CollisionProbability, SparseLimit) {
  // r = 1e-8: A -> 2^-b, P -> 2^-b + (1 - 2^-b) R.
  const std::uint64_t D = 100'000'000;
  for (unsigned b = 1; b <= 16; ++b) {
    const double lim = std::ldexp(1.0, -static_cast<int>(b));
    const auto p = bbit_collision_probability(1, 1, 0, D, b);
    EXPECT_NEAR(p.correction.A1, lim, 1e-6) << b;
    EXPECT_NEAR(p.probability, lim, 1e-6) << b;
    EXPECT_NEAR(bbit_density_term(1e-8, b), lim, 1e-6);
  }
  const auto p = bbit_collision_probability(3, 5, 2, D, 4);
  EXPECT_NEAR(p.probability, 1.0 / 16 + (15.0 / 16) * (2.0 / 6.0), 1e-6);
}

TEST(CollisionProbability, FullDensityTermIsZero) {
  for (unsigned b = 1; b <= 16; ++b) EXPECT_EQ(bbit_density_term(1.0, b), 0.0);
  const auto p = bbit_collision_probability(10, 10, 10, 10, 3);
  EXPECT_EQ(p.correction.A1, 0.0);
  EXPECT_EQ(p.probability, 1.0);
}

TEST(CollisionProbability, CorrectionInvariants) {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t D = 2 + uniform_below(rng, 100000);
    const auto f1 = 1 + uniform_below(rng, D);
    const auto f2 = 1 + uniform_below(rng, D);
    const unsigned b = 1 + static_cast<unsigned>(uniform_below(rng, 16));
    const auto c = bbit_correction(f1, f2, D, b);
    for (double A : {c.A1, c.A2}) {
      EXPECT_GE(A, 0.0);
      EXPECT_LE(A, 1.0);
    }
    // Strictly positive below full density, as long as (1-r)^(2^b-1) is
    // representable in double.
    if (f1 < D && std::ldexp(1.0, static_cast<int>(b)) * -std::log1p(-c.r1) < 700) {
      EXPECT_GT(c.A1, 0.0);
    }
    const double lo = std::min(c.A1, c.A2) - 1e-15, hi = std::max(c.A1, c.A2) + 1e-15;
    EXPECT_GE(c.C1, lo);
    EXPECT_LE(c.C1, hi);
    EXPECT_GE(c.C2, lo);
    EXPECT_LE(c.C2, hi);
    if (f1 == f2) {
      EXPECT_EQ(c.C1, c.C2);
    }
  }
}

TEST(CollisionProbability, RejectsInvalidInput) {
  EXPECT_THROW(bbit_collision_probability(3, 4, 4, 10, 2), InvalidArgument);
  EXPECT_THROW(bbit_collision_probability(0, 4, 0, 10, 2), InvalidArgument);
  EXPECT_THROW(bbit_collision_probability(11, 4, 0, 10, 2), InvalidArgument);
  EXPECT_THROW(bbit_collision_probability(3, 4, 1, 10, 0), InvalidArgument);
  EXPECT_THROW(bbit_collision_probability(3, 4, 1, 10, 17), InvalidArgument);
}

TEST(BbitEstimate, IdenticalSketchesGiveOne) {
  const BBitSketch s{4, {1, 5, 9, 15}, {1, 100}};
  for (std::uint64_t f : {1ull, 10ull, 99ull}) {
    const auto e = bbit_estimate(s, s, f, f, 100);
    EXPECT_EQ(e.match_fraction, 1.0);
    EXPECT_EQ(e.resemblance, 1.0);
  }
}

TEST(BbitEstimate, UnclampedAndClamped) {
  const BBitSketch a{1, {0, 0, 0, 0}, {1, 1000}}, b{1, {1, 1, 1, 1}, {1, 1000}};
  const auto e = bbit_estimate(a, b, 10, 10, 1000);
  EXPECT_LT(e.resemblance, 0.0);
  EXPECT_EQ(e.clamped(), 0.0);
  EXPECT_EQ(bbit_estimate(a, a, 10, 10, 1000).clamped(), 1.0);
}

TEST(BbitEstimate, RejectsMismatchedSketches) {
  const BBitSketch a{2, {1, 2, 3}, {1, 100}};
  EXPECT_THROW(bbit_estimate(a, BBitSketch{2, {1, 2}, {1, 100}}, 5, 5, 100), InvalidArgument);
  EXPECT_THROW(bbit_estimate(a, BBitSketch{3, {1, 2, 3}, {1, 100}}, 5, 5, 100), InvalidArgument);
  EXPECT_THROW(bbit_estimate(a, BBitSketch{2, {1, 2, 3}, {2, 100}}, 5, 5, 100), InvalidArgument);
}

TEST(BbitEstimate, SymmetricInArguments) {
  Rng rng(6);
  const auto fam = build_family(FamilyKind::exact, 64, 4096, 3);
  for (int t = 0; t < 20; ++t) {
    const auto s1 = oracle::random_set(rng, 4096, 100), s2 = oracle::random_set(rng, 4096, 300);
    const auto z1 = minhash(s1, fam), z2 = minhash(s2, fam);
    EXPECT_EQ(minwise_estimate(z1, z2), minwise_estimate(z2, z1));
    for (unsigned b : {1u, 2u, 8u}) {
      const auto e12 = bbit_estimate(truncate(z1, b), truncate(z2, b), 100, 300, 4096);
      const auto e21 = bbit_estimate(truncate(z2, b), truncate(z1, b), 300, 100, 4096);
      EXPECT_NEAR(e12.resemblance, e21.resemblance, 1e-15);
    }
  }
}

TEST(BbitEstimate, MatchFractionShrinksWithMoreBits) {
  Rng rng(7);
  const auto fam = build_family(FamilyKind::affine, 200, 1 << 20, 3);
  for (int t = 0; t < 20; ++t) {
    const auto z1 = minhash(oracle::random_set(rng, 1 << 20, 50), fam);
    const auto z2 = minhash(oracle::random_set(rng, 1 << 20, 50), fam);
    double prev = 1.0;
    for (unsigned b = 1; b <= 16; ++b) {
      const auto e = bbit_estimate(truncate(z1, b), truncate(z2, b), 50, 50, 1 << 20);
      EXPECT_LE(e.match_fraction, prev);
      prev = e.match_fraction;
    }
  }
}

TEST(BbitEstimate, CollisionLawAndUnbiasedness) {
  // Exact permutations, D = 2^12, r <= 0.1.
  Rng rng(8);
  const std::uint64_t D = 1 << 12;
  const auto [s1, s2] = oracle::set_pair(rng, D, 300, 200, 120);
  const double R = resemblance(s1, s2);
  const std::vector<SparseBinarySet> sets{s1, s2};
  const std::size_t families = 400, k = 50;
  const auto z = testing::exact_minima(sets, families * k, 12);
  for (unsigned b : {1u, 2u, 4u, 8u}) {
    const auto theory = bbit_collision_probability(300, 200, 120, D, b);
    const double P = theory.probability;
    const double p_all = testing::low_bit_match(z[0], z[1], 0, families * k, b);
    EXPECT_LE(std::abs(p_all - P), 3 * std::sqrt(P * (1 - P) / (families * k))) << "b=" << b;

    std::vector<double> est, phat;
    for (std::size_t f = 0; f < families; ++f) {
      const double p = testing::low_bit_match(z[0], z[1], f * k, (f + 1) * k, b);
      phat.push_back(p);
      est.push_back((p - theory.correction.C1) / (1 - theory.correction.C2));
    }
    const double se = std::sqrt(testing::variance(est) / families);
    EXPECT_LE(std::abs(testing::mean(est) - R), 3 * se) << "b=" << b;
    const double v = P * (1 - P) / k;
    EXPECT_LE(std::abs(testing::variance(phat) - v) / v, 0.25) << "b=" << b;
  }
}

}  // namespace
}  // namespace bbit
