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

// L1-loss linear SVM without bias, trained by dual coordinate descent.
//
//   primal:  min_w  1/2 w'w + C sum_i max(1 - y_i w'x_i, 0)
//   dual:    min_a  1/2 a'Qa - e'a,  0 <= a_i <= C,  Q_ij = y_i y_j x_i'x_j
//
// w = sum_i y_i a_i x_i is maintained incrementally, so each coordinate
// step costs one sparse dot product and one sparse update.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/expansion.hpp"
#include "bbit/random.hpp"

namespace bbit {

/// A sparse design matrix visited row by row.
template <class R>
concept RowSource = requires(const R& r, std::size_t i) {
  { r.rows() } -> std::convertible_to<std::size_t>;
  { r.dimension() } -> std::convertible_to<std::uint64_t>;
  r.for_each_nonzero(i, [](std::uint64_t, double) {});
};

/// Compressed sparse rows with explicit values.
class CsrMatrix {
 public:
  explicit CsrMatrix(std::uint64_t dimension) : dimension_(dimension) {}

  void add_row(std::span<const std::pair<std::uint64_t, double>> entries) {
    for (const auto& [idx, v] : entries) {
      if (idx >= dimension_) throw InvalidArgument("column index outside matrix dimension");
      indices_.push_back(idx);
      values_.push_back(v);
    }
    offsets_.push_back(indices_.size());
  }

  std::size_t rows() const noexcept { return offsets_.size() - 1; }
  std::uint64_t dimension() const noexcept { return dimension_; }

  template <class F>
  void for_each_nonzero(std::size_t i, F&& f) const {
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) f(indices_[p], values_[p]);
  }

 private:
  std::uint64_t dimension_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint64_t> indices_;
  std::vector<double> values_;
};

/// Binary sets as 0/1 rows, or scaled to unit norm (1/sqrt(|S|)) when
/// normalized.
class BinaryRows {
 public:
  BinaryRows(std::span<const SparseBinarySet> sets, std::uint64_t dimension, bool normalize)
      : sets_(sets), dimension_(dimension), normalize_(normalize) {}

  std::size_t rows() const noexcept { return sets_.size(); }
  std::uint64_t dimension() const noexcept { return dimension_; }

  template <class F>
  void for_each_nonzero(std::size_t i, F&& f) const {
    const auto& s = sets_[i];
    const double v = normalize_ ? 1.0 / std::sqrt(static_cast<double>(s.cardinality())) : 1.0;
    for (auto x : s.indices()) f(x, v);
  }

 private:
  std::span<const SparseBinarySet> sets_;
  std::uint64_t dimension_;
  bool normalize_;
};

struct TrainOptions {
  double C = 1.0;
  double tolerance = 0.1;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 1;
  bool record_history = true;
};

struct SvmModel {
  std::vector<double> weights;
  double C = 1.0;
  double tolerance = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t epochs_run = 0;
  double duality_gap = 0.0;
  std::uint64_t support_vectors = 0;

  std::uint64_t dimension() const noexcept { return weights.size(); }
};

struct TrainResult {
  SvmModel model;
  std::vector<double> alpha;
  std::vector<double> dual_history;  // dual objective at start and after each epoch
  double max_projected_gradient = 0;  // from the final verification pass
  bool converged = false;
};

template <RowSource Rows>
double decision_value(std::span<const double> w, const Rows& x, std::size_t i) {
  double s = 0;
  x.for_each_nonzero(i, [&](std::uint64_t idx, double v) {
    if (idx < w.size()) s += w[idx] * v;
  });
  return s;
}

inline double dual_objective(std::span<const double> w, std::span<const double> alpha) {
  const double ww = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  return 0.5 * ww - std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

template <RowSource Rows>
double primal_objective(std::span<const double> w, const Rows& x, std::span<const int> y, double C) {
  double hinge = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) hinge += std::max(0.0, 1.0 - y[i] * decision_value(w, x, i));
  return 0.5 * std::inner_product(w.begin(), w.end(), w.begin(), 0.0) + C * hinge;
}

/// sum_i y_i alpha_i x_i, computed from scratch.
template <RowSource Rows>
std::vector<double> weights_from_dual(const Rows& x, std::span<const int> y, std::span<const double> alpha) {
  std::vector<double> w(x.dimension(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double s = y[i] * alpha[i];
    if (s != 0.0) x.for_each_nonzero(i, [&](std::uint64_t idx, double v) { w[idx] += s * v; });
  }
  return w;
}

namespace detail {

inline double projected_gradient(double G, double alpha, double C) noexcept {
  if (alpha <= 0.0) return std::min(G, 0.0);
  if (alpha >= C) return std::max(G, 0.0);
  return G;
}

}  // namespace detail

/// max_i |PG_i| at the given (alpha, w), without updating anything.
template <RowSource Rows>
double max_projected_gradient(const Rows& x, std::span<const int> y, std::span<const double> alpha,
                              std::span<const double> w, double C) {
  double m = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double G = y[i] * decision_value(w, x, i) - 1.0;
    m = std::max(m, std::abs(detail::projected_gradient(G, alpha[i], C)));
  }
  return m;
}

/// Dual coordinate descent. Each epoch visits all coordinates in a fresh
/// seeded order. Training stops once an epoch's max |PG| and a following
/// update-free pass are both below the tolerance, or after max_epochs.
template <RowSource Rows>
TrainResult train(const Rows& x, std::span<const int> y, const TrainOptions& opt) {
  const std::size_t n = x.rows();
  if (n == 0) throw InvalidArgument("training set is empty");
  if (y.size() != n) throw InvalidArgument("labels and rows differ in length");
  if (!(opt.C > 0.0)) throw InvalidArgument("C must be positive");
  if (!(opt.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  for (int label : y) {
    if (label != 1 && label != -1) throw InvalidArgument("labels must be -1 or +1");
  }

  std::vector<double> qii(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    x.for_each_nonzero(i, [&](std::uint64_t, double v) { qii[i] += v * v; });
    if (qii[i] <= 0.0) throw InvalidArgument("row " + std::to_string(i) + " is all zero");
  }

  const double C = opt.C;
  TrainResult res;
  res.alpha.assign(n, 0.0);
  std::vector<double> w(x.dimension(), 0.0);
  auto& alpha = res.alpha;
  if (opt.record_history) res.dual_history.push_back(0.0);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(opt.seed);

  std::uint64_t epoch = 0;
  while (epoch < opt.max_epochs) {
    shuffle(order.begin(), order.end(), rng);
    double max_pg = 0;
    for (auto i : order) {
      const double G = y[i] * decision_value(std::span<const double>(w), x, i) - 1.0;
      const double PG = detail::projected_gradient(G, alpha[i], C);
      max_pg = std::max(max_pg, std::abs(PG));
      if (PG != 0.0) {
        const double old = alpha[i];
        alpha[i] = std::min(std::max(old - G / qii[i], 0.0), C);
        const double step = (alpha[i] - old) * y[i];
        if (step != 0.0) x.for_each_nonzero(i, [&](std::uint64_t idx, double v) { w[idx] += step * v; });
      }
    }
    ++epoch;
    if (opt.record_history) res.dual_history.push_back(dual_objective(w, alpha));
    if (max_pg < opt.tolerance) {
      res.max_projected_gradient = max_projected_gradient(x, y, alpha, w, C);
      if (res.max_projected_gradient < opt.tolerance) {
        res.converged = true;
        break;
      }
    }
  }
  if (!res.converged) res.max_projected_gradient = max_projected_gradient(x, y, alpha, w, C);

  SvmModel& m = res.model;
  m.C = C;
  m.tolerance = opt.tolerance;
  m.seed = opt.seed;
  m.epochs_run = epoch;
  m.support_vectors = static_cast<std::uint64_t>(std::count_if(alpha.begin(), alpha.end(), [](double a) { return a > 0.0; }));
  m.duality_gap = primal_objective(std::span<const double>(w), x, y, C) + dual_objective(w, alpha);
  m.weights = std::move(w);
  return res;
}

struct Prediction {
  int label;
  double decision;
};

/// sign(w'x) with ties (exactly 0) going to +1. Coordinates beyond the
/// model's dimension count as zero weight.
template <RowSource Rows>
Prediction predict(const SvmModel& model, const Rows& x, std::size_t i) {
  const double d = decision_value(std::span<const double>(model.weights), x, i);
  return {d >= 0.0 ? 1 : -1, d};
}

inline Prediction predict(const SvmModel& model, const ExpandedVector& v) {
  double d = 0;
  for (auto idx : v.indices) {
    if (idx < model.weights.size()) d += model.weights[idx] * v.value;
  }
  return {d >= 0.0 ? 1 : -1, d};
}

/// Fraction of rows whose predicted label matches.
template <RowSource Rows>
double evaluate(const SvmModel& model, const Rows& x, std::span<const int> y) {
  if (x.rows() == 0) throw InvalidArgument("test set is empty");
  if (y.size() != x.rows()) throw InvalidArgument("labels and rows differ in length");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) correct += predict(model, x, i).label == y[i];
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

}  // namespace bbit
