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

// Repeated-split accuracy experiments over a grid of (b, k, C).
//
// Every trial draws a fresh random train/test split and a fresh
// permutation family. Seeds are derived from (master seed, trial, k), so a
// cell's numbers do not depend on which jobs run first or in parallel.
// Within one trial and k, all b values share the same minima and differ
// only in how many low bits are kept.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/expansion.hpp"
#include "bbit/random.hpp"
#include "bbit/sketching.hpp"
#include "bbit/svm.hpp"

namespace bbit {

struct BenchOptions {
  std::vector<unsigned> b_grid{1, 2, 4, 8, 16};
  std::vector<std::uint64_t> k_grid{30, 50, 100, 150, 200, 300, 400, 500};
  std::vector<double> C_grid{0.01, 0.1, 1, 10};
  std::size_t trials = 2;
  std::uint64_t seed = 1;
  double test_fraction = 0.2;
  FamilyKind family = FamilyKind::exact;
  bool include_raw = true;
  bool normalize = true;
  double tolerance = 0.1;
  std::size_t max_epochs = 1000;
  std::size_t threads = 1;
};

/// Aggregate over trials for one (b, k, C); b = 0 and k = 0 mark the raw
/// feature baseline.
struct CellResult {
  unsigned b = 0;
  std::uint64_t k = 0;
  double C = 0;
  std::size_t trials = 0;
  double mean_accuracy = 0;
  double std_accuracy = 0;
  double mean_train_seconds = 0;
  double mean_support_vectors = 0;
  std::vector<double> accuracies;  // per trial, in trial order

  bool is_raw() const noexcept { return b == 0; }
};

struct ExperimentReport {
  std::vector<CellResult> cells;
  /// Per (b, C): mean accuracy never drops by more than one std when k grows.
  std::vector<std::pair<std::pair<unsigned, double>, bool>> monotone_in_k;

  const CellResult* find(unsigned b, std::uint64_t k, double C) const {
    for (const auto& c : cells) {
      if (c.b == b && c.k == k && c.C == C) return &c;
    }
    return nullptr;
  }

  /// Cell with the highest mean accuracy among those with the given b and k.
  const CellResult* best_over_C(unsigned b, std::uint64_t k) const {
    const CellResult* best = nullptr;
    for (const auto& c : cells) {
      if (c.b == b && c.k == k && (!best || c.mean_accuracy > best->mean_accuracy)) best = &c;
    }
    return best;
  }
};

/// Sample mean and (n-1)-normalized standard deviation.
inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.size() < 2) throw InvalidArgument("standard deviation needs at least 2 values");
  double m = 0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

namespace detail {

struct TrialOutcome {
  double accuracy;
  double seconds;
  std::uint64_t support_vectors;
};

inline constexpr std::uint64_t kSplitTag = 0x73706c6974ULL;
inline constexpr std::uint64_t kFamilyTag = 0x66616d696cULL;
inline constexpr std::uint64_t kSolverTag = 0x736f6c7665ULL;

template <RowSource Rows>
TrialOutcome train_and_test(const Rows& train_x, std::span<const int> train_y, const Rows& test_x,
                            std::span<const int> test_y, double C, const BenchOptions& opt, std::uint64_t seed) {
  TrainOptions to;
  to.C = C;
  to.tolerance = opt.tolerance;
  to.max_epochs = opt.max_epochs;
  to.seed = seed;
  to.record_history = false;
  const auto t0 = std::chrono::steady_clock::now();
  auto res = train(train_x, train_y, to);
  const auto t1 = std::chrono::steady_clock::now();
  return {evaluate(res.model, test_x, test_y), std::chrono::duration<double>(t1 - t0).count(),
          res.model.support_vectors};
}

}  // namespace detail

inline ExperimentReport run_bench(const LabeledDataset& data, const BenchOptions& opt) {
  validate(data);
  if (opt.trials < 2) throw InvalidArgument("bench needs at least 2 trials to report a standard deviation");
  if (opt.C_grid.empty()) throw InvalidArgument("empty C grid");
  if (opt.b_grid.empty() != opt.k_grid.empty()) throw InvalidArgument("b and k grids must both be empty or both set");
  for (auto b : opt.b_grid) check_bits(b);
  for (auto k : opt.k_grid) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
  }
  const unsigned max_b = opt.b_grid.empty() ? 1 : *std::max_element(opt.b_grid.begin(), opt.b_grid.end());

  // Cell layout: raw cells (one per C) first, then (k, b, C) in grid order.
  struct CellKey {
    unsigned b;
    std::uint64_t k;
    double C;
  };
  std::vector<CellKey> keys;
  if (opt.include_raw) {
    for (double C : opt.C_grid) keys.push_back({0, 0, C});
  }
  for (auto k : opt.k_grid) {
    for (auto b : opt.b_grid) {
      for (double C : opt.C_grid) keys.push_back({b, k, C});
    }
  }
  std::vector<std::vector<std::optional<detail::TrialOutcome>>> outcomes(
      keys.size(), std::vector<std::optional<detail::TrialOutcome>>(opt.trials));
  auto cell_index = [&](unsigned b, std::uint64_t k, double C) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].b == b && keys[i].k == k && keys[i].C == C) return i;
    }
    return keys.size();
  };

  // A job is one (trial, k) pair, or (trial, raw) with k = 0.
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    if (opt.include_raw) jobs.emplace_back(t, 0);
    for (auto k : opt.k_grid) jobs.emplace_back(t, k);
  }

  auto run_job = [&](std::size_t t, std::uint64_t k) {
    const auto split_idx = split_indices(data.size(), opt.test_fraction, derive_seed(opt.seed, {detail::kSplitTag, t}));
    const auto train_d = subset(data, split_idx.train);
    const auto test_d = subset(data, split_idx.test);
    const std::uint64_t solver_seed = derive_seed(opt.seed, {detail::kSolverTag, t});
    if (k == 0) {
      const BinaryRows tr(train_d.samples, data.universe_size, opt.normalize);
      const BinaryRows te(test_d.samples, data.universe_size, opt.normalize);
      for (double C : opt.C_grid) {
        outcomes[cell_index(0, 0, C)][t] =
            detail::train_and_test(tr, train_d.labels, te, test_d.labels, C, opt, solver_seed);
      }
      return;
    }
    const auto family_seed = derive_seed(opt.seed, {detail::kFamilyTag, t, k});
    const auto full = sketch_dataset(data, k, max_b, opt.family, family_seed);
    for (auto b : opt.b_grid) {
      const auto sk = b == max_b ? full : full.truncated(b);
      const auto tr_sk = sk.select(split_idx.train);
      const auto te_sk = sk.select(split_idx.test);
      const ExpandedRows tr(tr_sk, opt.normalize);
      const ExpandedRows te(te_sk, opt.normalize);
      for (double C : opt.C_grid) {
        outcomes[cell_index(b, k, C)][t] =
            detail::train_and_test(tr, train_d.labels, te, test_d.labels, C, opt, solver_seed);
      }
    }
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j; (j = next++) < jobs.size();) {
      try {
        run_job(jobs[j].first, jobs[j].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  for (std::size_t c = 0; c < keys.size(); ++c) {
    CellResult cell;
    cell.b = keys[c].b;
    cell.k = keys[c].k;
    cell.C = keys[c].C;
    cell.trials = opt.trials;
    double secs = 0, nsv = 0;
    for (const auto& o : outcomes[c]) {
      cell.accuracies.push_back(o->accuracy);
      secs += o->seconds;
      nsv += static_cast<double>(o->support_vectors);
    }
    std::tie(cell.mean_accuracy, cell.std_accuracy) = mean_std(cell.accuracies);
    cell.mean_train_seconds = secs / static_cast<double>(opt.trials);
    cell.mean_support_vectors = nsv / static_cast<double>(opt.trials);
    report.cells.push_back(std::move(cell));
  }

  std::vector<std::uint64_t> ks = opt.k_grid;
  std::sort(ks.begin(), ks.end());
  for (auto b : opt.b_grid) {
    for (double C : opt.C_grid) {
      bool ok = true;
      for (std::size_t i = 1; i < ks.size(); ++i) {
        const auto* lo = report.find(b, ks[i - 1], C);
        const auto* hi = report.find(b, ks[i], C);
        if (hi->mean_accuracy < lo->mean_accuracy - std::max(lo->std_accuracy, hi->std_accuracy)) ok = false;
      }
      report.monotone_in_k.push_back({{b, C}, ok});
    }
  }
  return report;
}

/// Aligned human-readable table.
inline void print_table(std::ostream& out, const ExperimentReport& r) {
  out << std::left << std::setw(6) << "b" << std::setw(7) << "k" << std::setw(9) << "C" << std::right
      << std::setw(10) << "acc%" << std::setw(9) << "std%" << std::setw(11) << "train_s" << std::setw(9)
      << "nSV" << std::setw(8) << "trials" << '\n';
  for (const auto& c : r.cells) {
    std::ostringstream C;
    C << c.C;
    out << std::left << std::setw(6) << (c.is_raw() ? std::string("raw") : std::to_string(c.b)) << std::setw(7)
        << (c.is_raw() ? std::string("-") : std::to_string(c.k)) << std::setw(9) << C.str() << std::right
        << std::fixed << std::setprecision(2) << std::setw(10) << 100 * c.mean_accuracy << std::setw(9)
        << 100 * c.std_accuracy << std::setprecision(4) << std::setw(11) << c.mean_train_seconds
        << std::setprecision(1) << std::setw(9) << c.mean_support_vectors << std::setw(8) << c.trials << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

/// One `key=value` line per cell, then one per monotonicity flag.
inline void print_rows(std::ostream& out, const ExperimentReport& r) {
  out << std::setprecision(10);
  for (const auto& c : r.cells) {
    out << "cell b=" << (c.is_raw() ? std::string("raw") : std::to_string(c.b)) << " k=" << c.k << " C=" << c.C
        << " trials=" << c.trials << " mean_acc=" << c.mean_accuracy << " std_acc=" << c.std_accuracy
        << " mean_train_s=" << c.mean_train_seconds << " mean_nsv=" << c.mean_support_vectors << '\n';
  }
  for (const auto& [key, ok] : r.monotone_in_k) {
    out << "monotone_k b=" << key.first << " C=" << key.second << " ok=" << (ok ? 1 : 0) << '\n';
  }
}

}  // namespace bbit
