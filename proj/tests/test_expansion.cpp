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

#include <gtest/gtest.h>

#include "bbit/estimation.hpp"
#include "bbit/expansion.hpp"
#include "bbit/random.hpp"

namespace bbit {
namespace {

BBitSketch random_row(Rng& rng, std::size_t k, unsigned b) {
  BBitSketch s{b, std::vector<std::uint16_t>(k), {7, 1000}};
  // Small alphabets make matches common enough to exercise the count.
  const std::uint64_t range = std::min<std::uint64_t>(1u << b, 1 + uniform_below(rng, 4));
  for (auto& v : s.values) v = static_cast<std::uint16_t>(uniform_below(rng, range));
  return s;
}

TEST(Expand, WorkedExample) {
  const auto x = expand(BBitSketch{2, {1, 0, 3}, {}}, false);
  EXPECT_EQ(x.dimension, 12u);
  EXPECT_EQ(x.to_dense(), (std::vector<double>{0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0}));
}

TEST(Expand, SmallestBlocks) {
  EXPECT_EQ(expand(BBitSketch{1, {0}, {}}, false).to_dense(), (std::vector<double>{0, 1}));
  EXPECT_EQ(expand(BBitSketch{1, {1}, {}}, false).to_dense(), (std::vector<double>{1, 0}));
}

TEST(Expand, OneNonzeroPerBlockAndNorms) {
  Rng rng(1);
  for (unsigned b = 1; b <= 10; ++b) {
    const auto row = random_row(rng, 37, b);
    const auto x = expand(row, false);
    ASSERT_EQ(x.indices.size(), 37u);
    for (std::size_t j = 0; j < 37; ++j) EXPECT_EQ(x.indices[j] >> b, j);
    EXPECT_EQ(dot(x, x), 37.0);
    const auto xn = expand(row, true);
    EXPECT_NEAR(dot(xn, xn), 1.0, 0x1.0p-40);
  }
  EXPECT_THROW(expand(BBitSketch{0, {0}, {}}, false), InvalidArgument);
}

TEST(Expand, DotCountsMatchingPositions) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    const unsigned b = 1 + static_cast<unsigned>(uniform_below(rng, 16));
    const std::size_t k = 1 + uniform_below(rng, 60);
    const auto r1 = random_row(rng, k, b), r2 = random_row(rng, k, b);
    std::uint64_t agree = 0;
    for (std::size_t j = 0; j < k; ++j) agree += r1.values[j] == r2.values[j];
    const auto x1 = expand(r1, false), x2 = expand(r2, false);
    EXPECT_EQ(shared_support(x1, x2), agree);
    EXPECT_EQ(dot(x1, x2), static_cast<double>(agree));
  }
}

TEST(Expand, NormalizedDotIsMatchFraction) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const unsigned b = 1 + static_cast<unsigned>(uniform_below(rng, 8));
    const std::size_t k = 1 + uniform_below(rng, 300);
    const auto r1 = random_row(rng, k, b), r2 = random_row(rng, k, b);
    const double phat = bbit_estimate(r1, r2, 10, 10, 1000).match_fraction;
    EXPECT_NEAR(dot(expand(r1, true), expand(r2, true)), phat, 0x1.0p-40);
  }
}

TEST(ExpandDataset, RowsMatchPerRowExpansion) {
  Rng rng(4);
  SketchFile f(9, 3, 7, 1000, {5, 6, 7});
  for (std::size_t i = 0; i < 3; ++i) f.set_row(i, random_row(rng, 9, 3));
  for (bool normalize : {false, true}) {
    const auto rows = expand_dataset(f, normalize);
    EXPECT_EQ(rows.rows(), 3u);
    EXPECT_EQ(rows.dimension(), 72u);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto x = rows.row(i);
      const auto y = expand(f.row(i), normalize);
      EXPECT_EQ(x.indices, y.indices);
      EXPECT_EQ(x.value, y.value);
      std::size_t nnz = 0;
      rows.for_each_nonzero(i, [&](std::uint64_t, double) { ++nnz; });
      EXPECT_EQ(nnz, 9u);
    }
  }
}

TEST(ExpandDataset, IdenticalAndDisjointRows) {
  SketchFile f(4, 2, 0, 100, {3, 3, 3});
  f.set_row(0, BBitSketch{2, {0, 1, 2, 3}, f.family()});
  f.set_row(1, BBitSketch{2, {0, 1, 2, 3}, f.family()});
  f.set_row(2, BBitSketch{2, {1, 2, 3, 0}, f.family()});
  const auto rows = expand_dataset(f, true);
  EXPECT_DOUBLE_EQ(dot(rows.row(0), rows.row(1)), 1.0);
  EXPECT_EQ(dot(rows.row(0), rows.row(2)), 0.0);
}

}  // namespace
}  // namespace bbit
