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

// One-hot expansion of b-bit sketches. Position j with value v maps to
// coordinate j*2^b + (2^b - 1 - v) of a 2^b * k dimensional vector, so the
// inner product of two expanded rows counts their matching positions.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bbit/error.hpp"
#include "bbit/sketch.hpp"
#include "bbit/sketch_file.hpp"

namespace bbit {

constexpr std::uint64_t expanded_dimension(std::uint64_t k, unsigned b) noexcept { return k << b; }

constexpr std::uint64_t expanded_index(std::uint64_t j, unsigned b, std::uint16_t v) noexcept {
  return (j << b) + ((std::uint64_t{1} << b) - 1 - v);
}

/// k nonzeros, one per block of 2^b coordinates, all with the same value.
struct ExpandedVector {
  std::uint64_t dimension = 0;
  std::vector<std::uint64_t> indices;  // strictly increasing
  double value = 1.0;                  // 1, or 1/sqrt(k) when normalized

  std::vector<double> to_dense() const {
    std::vector<double> out(dimension, 0.0);
    for (auto i : indices) out[i] = value;
    return out;
  }
};

inline ExpandedVector expand(const BBitSketch& row, bool normalize) {
  check_bits(row.bits);
  ExpandedVector out;
  out.dimension = expanded_dimension(row.size(), row.bits);
  out.indices.reserve(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out.indices.push_back(expanded_index(j, row.bits, row.values[j]));
  out.value = normalize ? 1.0 / std::sqrt(static_cast<double>(row.size())) : 1.0;
  return out;
}

/// Number of shared nonzero coordinates.
inline std::uint64_t shared_support(const ExpandedVector& x, const ExpandedVector& y) noexcept {
  std::uint64_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < x.indices.size() && j < y.indices.size()) {
    if (x.indices[i] == y.indices[j]) {
      ++count;
      ++i;
      ++j;
    } else if (x.indices[i] < y.indices[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

inline double dot(const ExpandedVector& x, const ExpandedVector& y) noexcept {
  return static_cast<double>(shared_support(x, y)) * x.value * y.value;
}

/// Lazy view of a sketch file as the expanded sparse design matrix. Rows
/// are produced on demand from the packed payload.
class ExpandedRows {
 public:
  ExpandedRows(const SketchFile& sketches, bool normalize)
      : sketches_(&sketches),
        value_(normalize ? 1.0 / std::sqrt(static_cast<double>(sketches.k())) : 1.0) {}

  ExpandedRows(SketchFile&&, bool) = delete;

  std::size_t rows() const noexcept { return sketches_->rows(); }
  std::uint64_t dimension() const noexcept { return expanded_dimension(sketches_->k(), sketches_->bits()); }
  double value() const noexcept { return value_; }

  template <class F>
  void for_each_nonzero(std::size_t i, F&& f) const {
    const auto packed = sketches_->packed_row(i);
    const unsigned b = sketches_->bits();
    for (std::size_t j = 0; j < sketches_->k(); ++j) f(expanded_index(j, b, unpack_value(packed, j, b)), value_);
  }

  ExpandedVector row(std::size_t i) const {
    ExpandedVector out;
    out.dimension = dimension();
    out.value = value_;
    out.indices.reserve(sketches_->k());
    for_each_nonzero(i, [&](std::uint64_t idx, double) { out.indices.push_back(idx); });
    return out;
  }

 private:
  const SketchFile* sketches_;
  double value_;
};

inline ExpandedRows expand_dataset(const SketchFile& sketches, bool normalize) { return {sketches, normalize}; }
ExpandedRows expand_dataset(SketchFile&&, bool) = delete;

}  // namespace bbit
