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

// Synthetic sparse binary classification data with a planted linear
// separator. Each class owns a pool of features; a sample mixes draws from
// its class pool with uniform background features. The separator is +1 on
// the positive pool and -1 on the negative pool, and labels are flipped with
// probability `label_noise` after the fact.

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/random.hpp"

namespace bbit {

struct PlantedOptions {
  std::size_t samples = 2000;
  std::uint64_t universe_size = std::uint64_t{1} << 20;
  std::size_t nonzeros = 100;
  std::size_t pool_size = 200;
  std::size_t informative = 30;  // features drawn from the class pool
  double label_noise = 0.05;
  std::uint64_t seed = 1;
};

inline LabeledDataset make_planted_dataset(const PlantedOptions& opt) {
  if (opt.informative > opt.nonzeros || opt.informative > opt.pool_size) {
    throw InvalidArgument("informative features exceed nonzeros or pool size");
  }
  if (2 * opt.pool_size + opt.nonzeros > opt.universe_size) throw InvalidArgument("universe too small for pools");
  if (!(opt.label_noise >= 0.0 && opt.label_noise < 0.5)) throw InvalidArgument("label noise must lie in [0, 0.5)");

  Rng rng(opt.seed);
  std::unordered_set<std::uint64_t> used;
  auto draw_pool = [&] {
    std::vector<std::uint64_t> pool;
    while (pool.size() < opt.pool_size) {
      const auto f = uniform_below(rng, opt.universe_size);
      if (used.insert(f).second) pool.push_back(f);
    }
    return pool;
  };
  const std::vector<std::vector<std::uint64_t>> pools{draw_pool(), draw_pool()};
  const std::unordered_set<std::uint64_t> positive(pools[0].begin(), pools[0].end());
  const std::unordered_set<std::uint64_t> negative(pools[1].begin(), pools[1].end());

  LabeledDataset d;
  d.universe_size = opt.universe_size;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const int cls = (rng() & 1) ? 1 : -1;
    const auto& pool = pools[cls > 0 ? 0 : 1];
    std::unordered_set<std::uint64_t> members;
    while (members.size() < opt.informative) members.insert(pool[uniform_below(rng, pool.size())]);
    while (members.size() < opt.nonzeros) members.insert(uniform_below(rng, opt.universe_size));
    long score = 0;
    for (auto f : members) score += positive.count(f) ? 1 : (negative.count(f) ? -1 : 0);
    int label = score > 0 ? 1 : (score < 0 ? -1 : cls);
    if (uniform_real(rng) < opt.label_noise) label = -label;
    d.samples.emplace_back(std::vector<std::uint64_t>(members.begin(), members.end()), opt.universe_size);
    d.labels.push_back(label);
  }
  return d;
}

}  // namespace bbit
