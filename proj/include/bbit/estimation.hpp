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

// Resemblance and its estimators.
//
// For sets S1, S2 with a = |S1 & S2| the resemblance is R = a/(f1+f2-a).
// The minwise estimator is the fraction of matching minima. The b-bit
// estimator corrects the fraction of matching low-bit patterns using
//
//   A_i = r_i (1-r_i)^(2^b - 1) / (1 - (1-r_i)^(2^b)),   r_i = f_i / D
//   C1  = A1 r2/(r1+r2) + A2 r1/(r1+r2)
//   C2  = A1 r1/(r1+r2) + A2 r2/(r1+r2)
//   P_b = C1 + (1 - C2) R,   R_b = (P_b_hat - C1) / (1 - C2)
//
// valid for large D.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/sketch.hpp"

namespace bbit {

/// Exact rational a/u, u >= 1.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

inline std::uint64_t intersection_size(const SparseBinarySet& s1, const SparseBinarySet& s2) noexcept {
  const auto a = s1.indices();
  const auto b = s2.indices();
  std::uint64_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

/// |S1 & S2| / |S1 | S2| as an exact fraction.
inline Ratio resemblance_ratio(const SparseBinarySet& s1, const SparseBinarySet& s2) {
  if (s1.universe_size() != s2.universe_size()) throw InvalidArgument("sets come from different universes");
  const auto a = intersection_size(s1, s2);
  return {a, s1.cardinality() + s2.cardinality() - a};
}

inline double resemblance(const SparseBinarySet& s1, const SparseBinarySet& s2) {
  return resemblance_ratio(s1, s2).value();
}

inline void check_comparable(const MinwiseSketch& s1, const MinwiseSketch& s2) {
  if (s1.size() != s2.size()) throw InvalidArgument("sketches differ in k");
  if (s1.size() == 0) throw InvalidArgument("empty sketch");
  if (s1.family != s2.family) throw InvalidArgument("sketches come from different permutation families");
}

inline void check_comparable(const BBitSketch& s1, const BBitSketch& s2) {
  if (s1.size() != s2.size()) throw InvalidArgument("sketches differ in k");
  if (s1.size() == 0) throw InvalidArgument("empty sketch");
  if (s1.bits != s2.bits) throw InvalidArgument("sketches differ in b");
  if (s1.family != s2.family) throw InvalidArgument("sketches come from different permutation families");
}

/// Number of positions whose values are equal.
template <class Sketch>
std::size_t match_count(const Sketch& s1, const Sketch& s2) {
  check_comparable(s1, s2);
  std::size_t m = 0;
  for (std::size_t j = 0; j < s1.size(); ++j) m += s1.values[j] == s2.values[j];
  return m;
}

/// Fraction of matching minima; unbiased for R under exact permutations.
inline double minwise_estimate(const MinwiseSketch& s1, const MinwiseSketch& s2) {
  return static_cast<double>(match_count(s1, s2)) / static_cast<double>(s1.size());
}

/// Variance of the minwise estimator: R(1-R)/k.
inline double minwise_variance(double resemblance, std::uint64_t k) {
  if (!(resemblance >= 0.0 && resemblance <= 1.0)) throw InvalidArgument("resemblance must lie in [0, 1]");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  return resemblance * (1.0 - resemblance) / static_cast<double>(k);
}

/// A_{i,b} for density r. (1-r)^m is evaluated as exp(m log1p(-r)) so the
/// r -> 0 limit 2^-b is reached without cancellation. At r = 1 the
/// expression evaluates to 0 directly.
inline double bbit_density_term(double r, unsigned b) {
  const double m = std::ldexp(1.0, static_cast<int>(b));
  const double log_q = std::log1p(-r);
  const double numer = r * std::exp((m - 1.0) * log_q);
  const double denom = -std::expm1(m * log_q);
  return numer / denom;
}

struct BbitCorrection {
  double r1 = 0, r2 = 0;
  double A1 = 0, A2 = 0;
  double C1 = 0, C2 = 0;
};

inline BbitCorrection bbit_correction(std::uint64_t f1, std::uint64_t f2, std::uint64_t universe_size, unsigned b) {
  check_bits(b);
  if (universe_size == 0) throw InvalidArgument("universe size must be positive");
  if (f1 == 0 || f2 == 0 || f1 > universe_size || f2 > universe_size) {
    throw InvalidArgument("set sizes must lie in [1, D]");
  }
  BbitCorrection c;
  const auto D = static_cast<double>(universe_size);
  c.r1 = static_cast<double>(f1) / D;
  c.r2 = static_cast<double>(f2) / D;
  c.A1 = bbit_density_term(c.r1, b);
  c.A2 = bbit_density_term(c.r2, b);
  const double s = c.r1 + c.r2;
  c.C1 = c.A1 * c.r2 / s + c.A2 * c.r1 / s;
  c.C2 = c.A1 * c.r1 / s + c.A2 * c.r2 / s;
  return c;
}

struct CollisionProbability {
  double probability = 0;  // P_b
  double resemblance = 0;  // R
  BbitCorrection correction;
};

/// Probability that two sets' minima agree on their lowest b bits, given
/// |S1| = f1, |S2| = f2 and |S1 & S2| = a.
inline CollisionProbability bbit_collision_probability(std::uint64_t f1, std::uint64_t f2, std::uint64_t a,
                                                       std::uint64_t universe_size, unsigned b) {
  if (a > std::min(f1, f2)) throw InvalidArgument("intersection larger than the smaller set");
  CollisionProbability out;
  out.correction = bbit_correction(f1, f2, universe_size, b);
  out.resemblance = static_cast<double>(a) / static_cast<double>(f1 + f2 - a);
  out.probability = out.correction.C1 + (1.0 - out.correction.C2) * out.resemblance;
  return out;
}

struct BbitEstimate {
  double resemblance = 0;  // unclamped, may leave [0, 1] for small k
  double match_fraction = 0;
  BbitCorrection correction;

  double clamped() const noexcept { return std::clamp(resemblance, 0.0, 1.0); }
};

/// b-bit resemblance estimate from two sketches and the stored set sizes.
inline BbitEstimate bbit_estimate(const BBitSketch& s1, const BBitSketch& s2, std::uint64_t f1, std::uint64_t f2,
                                  std::uint64_t universe_size) {
  BbitEstimate out;
  out.match_fraction = static_cast<double>(match_count(s1, s2)) / static_cast<double>(s1.size());
  out.correction = bbit_correction(f1, f2, universe_size, s1.bits);
  const double denom = 1.0 - out.correction.C2;
  if (denom <= 1e-12) throw InvalidArgument("degenerate b-bit correction: 1 - C2 is zero");
  out.resemblance = (out.match_fraction - out.correction.C1) / denom;
  return out;
}

}  // namespace bbit
