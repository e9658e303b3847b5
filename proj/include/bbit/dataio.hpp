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

// Sparse binary datasets: svmlight parsing, binary quantization and
// seeded train/test splitting.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "bbit/error.hpp"
#include "bbit/random.hpp"

namespace bbit {

/// A sample as a non-empty set of feature indices in {0, ..., D-1}.
class SparseBinarySet {
 public:
  /// Sorts and deduplicates `indices`. Throws InvalidArgument when the set
  /// is empty or an index is outside the universe.
  SparseBinarySet(std::vector<std::uint64_t> indices, std::uint64_t universe_size)
      : indices_(std::move(indices)), universe_size_(universe_size) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (indices_.empty()) throw InvalidArgument("empty set: every sample needs at least one feature");
    if (indices_.back() >= universe_size_) {
      throw InvalidArgument("feature index " + std::to_string(indices_.back()) +
                            " outside universe of size " + std::to_string(universe_size_));
    }
  }

  std::span<const std::uint64_t> indices() const noexcept { return indices_; }
  std::uint64_t universe_size() const noexcept { return universe_size_; }
  std::size_t cardinality() const noexcept { return indices_.size(); }

  bool contains(std::uint64_t x) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), x);
  }

  friend bool operator==(const SparseBinarySet&, const SparseBinarySet&) = default;

 private:
  std::vector<std::uint64_t> indices_;
  std::uint64_t universe_size_;
};

struct LabeledDataset {
  std::vector<SparseBinarySet> samples;
  std::vector<int> labels;  // each -1 or +1
  std::uint64_t universe_size = 0;

  std::size_t size() const noexcept { return samples.size(); }

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// Parsed svmlight rows before quantization; entries keep file order.
struct RealDataset {
  struct Entry {
    std::uint64_t index;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<std::vector<Entry>> rows;
  std::vector<int> labels;
  std::uint64_t universe_size = 0;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Throws InvalidArgument unless the dataset is non-empty, labels are +-1
/// and every sample lives in the dataset's universe.
inline void validate(const LabeledDataset& d) {
  if (d.samples.empty()) throw InvalidArgument("dataset has no samples");
  if (d.samples.size() != d.labels.size()) throw InvalidArgument("samples and labels differ in length");
  for (int y : d.labels) {
    if (y != 1 && y != -1) throw InvalidArgument("label must be -1 or +1, got " + std::to_string(y));
  }
  for (const auto& s : d.samples) {
    if (s.universe_size() != d.universe_size) throw InvalidArgument("sample universe differs from dataset universe");
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

/// Parses svmlight/libsvm text (`<label> <idx>:<val> ...`, 1-based indices).
/// Labels are sign-mapped: positive -> +1, zero or negative -> -1. Blank
/// lines, `#` comments and `qid:` tokens are skipped. The universe size is
/// max index + 1 unless `universe_size` is given, which must cover it.
inline RealDataset parse_svmlight_values(std::istream& in,
                                         std::optional<std::uint64_t> universe_size = {}) {
  RealDataset out;
  std::uint64_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;

    std::vector<std::string_view> tokens;
    for (std::size_t pos = 0; pos < body.size();) {
      const auto next = body.find_first_of(" \t", pos);
      const auto tok = body.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
      if (!tok.empty()) tokens.push_back(tok);
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }

    double label = 0;
    if (!detail::parse_double(tokens.front(), label)) {
      throw ParseError("label '" + std::string(tokens.front()) + "' is not a number", line_no);
    }
    std::vector<RealDataset::Entry> row;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("expected <index>:<value>, got '" + std::string(tok) + "'", line_no);
      }
      const auto idx_text = tok.substr(0, colon);
      if (idx_text == "qid") continue;
      if (idx_text.front() == '-') throw ParseError("negative feature index '" + std::string(idx_text) + "'", line_no);
      std::uint64_t idx = 0;
      const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec != std::errc{} || ptr != idx_text.data() + idx_text.size()) {
        throw ParseError("feature index '" + std::string(idx_text) + "' is not a positive integer", line_no);
      }
      if (idx == 0) throw ParseError("feature index 0 (indices are 1-based)", line_no);
      double value = 0;
      if (!detail::parse_double(tok.substr(colon + 1), value)) {
        throw ParseError("feature value in '" + std::string(tok) + "' is not a finite number", line_no);
      }
      max_index = std::max(max_index, idx);
      row.push_back({idx - 1, value});
    }
    out.rows.push_back(std::move(row));
    out.labels.push_back(label > 0 ? 1 : -1);
  }
  if (out.rows.empty()) throw ParseError("no samples", 0);
  if (universe_size) {
    if (*universe_size < max_index) {
      throw ParseError("feature index " + std::to_string(max_index) + " exceeds universe size " +
                           std::to_string(*universe_size), 0);
    }
    out.universe_size = *universe_size;
  } else {
    out.universe_size = max_index;  // max 1-based index == max 0-based index + 1
  }
  if (out.universe_size == 0) out.universe_size = 1;
  return out;
}

/// Binary quantization: every entry with a nonzero value becomes set
/// membership, zero-valued entries are dropped. A sample left empty is an
/// error.
inline LabeledDataset binarize(const RealDataset& d) {
  LabeledDataset out;
  out.universe_size = d.universe_size;
  out.labels = d.labels;
  out.samples.reserve(d.rows.size());
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    std::vector<std::uint64_t> idx;
    for (const auto& e : d.rows[i]) {
      if (e.value != 0.0) idx.push_back(e.index);
    }
    if (idx.empty()) {
      throw InvalidArgument("sample " + std::to_string(i + 1) + " is empty after binarization");
    }
    out.samples.emplace_back(std::move(idx), d.universe_size);
  }
  return out;
}

/// Lifts a binary dataset back to real values (every member has value 1).
inline RealDataset as_real(const LabeledDataset& d) {
  RealDataset out;
  out.universe_size = d.universe_size;
  out.labels = d.labels;
  for (const auto& s : d.samples) {
    std::vector<RealDataset::Entry> row;
    for (auto x : s.indices()) row.push_back({x, 1.0});
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// parse_svmlight_values followed by binarize.
inline LabeledDataset parse_svmlight(std::istream& in, std::optional<std::uint64_t> universe_size = {}) {
  return binarize(parse_svmlight_values(in, universe_size));
}

/// Writes a binary dataset as svmlight text with value 1 on every feature.
inline void write_svmlight(std::ostream& out, const LabeledDataset& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << (d.labels[i] > 0 ? "+1" : "-1");
    for (auto x : d.samples[i].indices()) out << ' ' << (x + 1) << ":1";
    out << '\n';
  }
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Number of test samples for a split: round(fraction * n), kept within
/// [1, n-1] so neither side is empty.
inline std::size_t test_count(std::size_t n, double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidArgument("test fraction must lie in (0, 1)");
  }
  if (n < 2) throw InvalidArgument("splitting needs at least 2 samples");
  const auto t = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(t, 1, n - 1);
}

/// Uniform selection of the test part without replacement, deterministic in
/// `seed`. Both index lists come back sorted.
inline SplitIndices split_indices(std::size_t n, double test_fraction, std::uint64_t seed) {
  const std::size_t t = test_count(n, test_fraction);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(order.begin(), order.end(), rng);
  SplitIndices out;
  out.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
  out.train.assign(order.begin() + static_cast<std::ptrdiff_t>(t), order.end());
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.train.begin(), out.train.end());
  return out;
}

inline LabeledDataset subset(const LabeledDataset& d, std::span<const std::size_t> rows) {
  LabeledDataset out;
  out.universe_size = d.universe_size;
  out.samples.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (auto i : rows) {
    out.samples.push_back(d.samples.at(i));
    out.labels.push_back(d.labels.at(i));
  }
  return out;
}

/// Random train/test partition; returns {train, test}.
inline std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& d, double test_fraction,
                                                       std::uint64_t seed) {
  const auto idx = split_indices(d.size(), test_fraction, seed);
  return {subset(d, idx.train), subset(d, idx.test)};
}

}  // namespace bbit
