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

// Resemblance, minwise and b-bit matching matrices over a collection of
// sets, and a cyclic Jacobi eigensolver used to witness that they are
// positive semidefinite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/estimation.hpp"
#include "bbit/expansion.hpp"
#include "bbit/sketching.hpp"

namespace bbit {

enum class GramKind { resemblance, minwise, bbit, expanded, general };

inline std::string_view to_string(GramKind k) noexcept {
  switch (k) {
    case GramKind::resemblance: return "resemblance";
    case GramKind::minwise: return "minwise";
    case GramKind::bbit: return "bbit";
    case GramKind::expanded: return "expanded";
    case GramKind::general: return "general";
  }
  return "?";
}

/// Dense row-major symmetric n x n matrix.
class GramMatrix {
 public:
  GramMatrix(std::size_t order, GramKind kind) : n_(order), kind_(kind), a_(order * order, 0.0) {}

  std::size_t order() const noexcept { return n_; }
  GramKind kind() const noexcept { return kind_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  std::span<const double> data() const noexcept { return a_; }

  /// Writes v to both (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, double v) noexcept {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  bool is_symmetric(double tol = 0x1.0p-40) const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  GramKind kind_;
  std::vector<double> a_;
};

inline GramMatrix resemblance_matrix(std::span<const SparseBinarySet> sets) {
  GramMatrix m(sets.size(), GramKind::resemblance);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    m(i, i) = 1.0;
    for (std::size_t j = i + 1; j < sets.size(); ++j) m.set_symmetric(i, j, resemblance(sets[i], sets[j]));
  }
  return m;
}

/// M_ij = 1{min pi(S_i) == min pi(S_j)} for member `member` of the family.
inline GramMatrix minwise_matrix(std::span<const SparseBinarySet> sets, const PermutationFamily& family,
                                 std::size_t member) {
  if (member >= family.size()) throw InvalidArgument("permutation index out of range");
  std::vector<std::uint64_t> z;
  z.reserve(sets.size());
  for (const auto& s : sets) {
    if (s.universe_size() != family.universe_size()) throw InvalidArgument("set universe differs from family");
    std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
    for (auto x : s.indices()) m = std::min(m, family.apply(member, x));
    z.push_back(m);
  }
  GramMatrix out(sets.size(), GramKind::minwise);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i; j < z.size(); ++j) out.set_symmetric(i, j, z[i] == z[j] ? 1.0 : 0.0);
  }
  return out;
}

/// b-bit matching matrix. With `member` set, entries are the 0/1 indicators
/// for that permutation; otherwise the average over all k positions, i.e.
/// the pairwise match fractions, computed as integer counts divided by k.
inline GramMatrix bbit_matrix(std::span<const BBitSketch> rows, std::optional<std::size_t> member = {}) {
  GramMatrix out(rows.size(), GramKind::bbit);
  if (rows.empty()) return out;
  const auto k = rows.front().size();
  if (member && *member >= k) throw InvalidArgument("permutation index out of range");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      check_comparable(rows[i], rows[j]);
      double v;
      if (member) {
        v = rows[i].values[*member] == rows[j].values[*member] ? 1.0 : 0.0;
      } else {
        v = static_cast<double>(match_count(rows[i], rows[j])) / static_cast<double>(k);
      }
      out.set_symmetric(i, j, v);
    }
  }
  return out;
}

/// Gram matrix of the expanded one-hot vectors.
inline GramMatrix expanded_gram(std::span<const BBitSketch> rows, bool normalize) {
  std::vector<ExpandedVector> x;
  x.reserve(rows.size());
  for (const auto& r : rows) x.push_back(expand(r, normalize));
  GramMatrix out(rows.size(), GramKind::expanded);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) out.set_symmetric(i, j, dot(x[i], x[j]));
  }
  return out;
}

inline constexpr std::size_t kMaxEigenOrder = 500;

/// All eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi
/// rotations, iterated until the off-diagonal Frobenius norm is at most
/// 1e-12 of the full norm.
inline std::vector<double> symmetric_eigenvalues(std::size_t n, std::span<const double> entries) {
  if (entries.size() != n * n) throw InvalidArgument("matrix entries do not match its order");
  if (n > kMaxEigenOrder) throw InvalidArgument("eigensolver supports order <= 500");
  std::vector<double> a(entries.begin(), entries.end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double frob2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > 0x1.0p-40 * (1.0 + std::abs(at(i, j)))) {
        throw InvalidArgument("matrix is not symmetric");
      }
      frob2 += at(i, j) * at(i, j);
    }
  }
  const double target = 1e-12 * std::sqrt(frob2);

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * at(i, j) * at(i, j);
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = c * arp - s * arq;
          at(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = at(p, r);
          const double aqr = at(q, r);
          at(p, r) = c * apr - s * aqr;
          at(q, r) = s * apr + c * aqr;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  if (off_norm() > target) throw Error("Jacobi eigensolver did not converge in 100 sweeps");

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline double min_eigenvalue(std::size_t n, std::span<const double> entries) {
  if (n == 0) throw InvalidArgument("empty matrix");
  return symmetric_eigenvalues(n, entries).front();
}

inline double min_eigenvalue(const GramMatrix& m) { return min_eigenvalue(m.order(), m.data()); }

/// Tolerance used for positive semidefiniteness: -1e-10 * n.
inline bool is_psd(const GramMatrix& m) { return min_eigenvalue(m) >= -1e-10 * static_cast<double>(m.order()); }

}  // namespace bbit
