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

// Trained model on disk. All integers and floats little-endian.
//
//   magic "BBITSVMM" (8), version u32,
//   dimension u64, C f64, tolerance f64, seed u64,
//   epochs u64, duality gap f64, support vectors u64,
//   feature space: kind u8 (0 raw, 1 sketch), normalize u8,
//                  k u32, b u8, family kind u8, family seed u64, D u64,
//   weights f64 * dimension

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "bbit/error.hpp"
#include "bbit/sketch.hpp"
#include "bbit/sketch_file.hpp"
#include "bbit/svm.hpp"

namespace bbit {

inline constexpr std::array<char, 8> kModelMagic{'B', 'B', 'I', 'T', 'S', 'V', 'M', 'M'};
inline constexpr std::uint32_t kModelVersion = 1;

/// What the weights are defined over: raw binary features, or expanded
/// b-bit sketches of one specific permutation family.
struct FeatureSpace {
  enum class Kind : std::uint8_t { raw = 0, sketch = 1 };
  Kind kind = Kind::raw;
  bool normalize = true;
  std::uint32_t k = 0;
  unsigned b = 0;
  FamilyKind family = FamilyKind::exact;
  std::uint64_t family_seed = 0;
  std::uint64_t universe_size = 0;

  friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;
};

/// Throws FormatError unless `sketches` were drawn from the same family with
/// the same k and b as the model's training data.
inline void check_same_family(const FeatureSpace& space, const SketchFile& sketches) {
  if (space.kind != FeatureSpace::Kind::sketch) throw FormatError("model was trained on raw features, not sketches");
  if (space.k != sketches.k() || space.b != sketches.bits() || space.family_seed != sketches.seed() ||
      space.universe_size != sketches.universe_size()) {
    throw FormatError("sketch family mismatch: model has (k=" + std::to_string(space.k) +
                      ", b=" + std::to_string(space.b) + ", seed=" + std::to_string(space.family_seed) +
                      ", D=" + std::to_string(space.universe_size) + "), input has (k=" +
                      std::to_string(sketches.k()) + ", b=" + std::to_string(sketches.bits()) +
                      ", seed=" + std::to_string(sketches.seed()) + ", D=" +
                      std::to_string(sketches.universe_size()) + ")");
  }
}

inline void write_model(std::ostream& out, const SvmModel& m, const FeatureSpace& space) {
  out.write(kModelMagic.data(), kModelMagic.size());
  detail::put_le<std::uint32_t>(out, kModelVersion);
  detail::put_le<std::uint64_t>(out, m.weights.size());
  detail::put_f64(out, m.C);
  detail::put_f64(out, m.tolerance);
  detail::put_le<std::uint64_t>(out, m.seed);
  detail::put_le<std::uint64_t>(out, m.epochs_run);
  detail::put_f64(out, m.duality_gap);
  detail::put_le<std::uint64_t>(out, m.support_vectors);
  detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(space.kind));
  detail::put_le<std::uint8_t>(out, space.normalize ? 1 : 0);
  detail::put_le<std::uint32_t>(out, space.k);
  detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(space.b));
  detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(space.family));
  detail::put_le<std::uint64_t>(out, space.family_seed);
  detail::put_le<std::uint64_t>(out, space.universe_size);
  for (double w : m.weights) detail::put_f64(out, w);
  if (!out) throw IoError("failed writing model file");
}

struct ModelFile {
  SvmModel model;
  FeatureSpace space;
};

inline ModelFile read_model(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size())) throw FormatError("truncated stream while reading magic");
  if (magic != kModelMagic) throw FormatError("not a model file (bad magic)");
  const auto version = detail::get_le<std::uint32_t>(in, "version");
  if (version != kModelVersion) throw FormatError("unsupported model file version " + std::to_string(version));
  ModelFile f;
  const auto dim = detail::get_le<std::uint64_t>(in, "dimension");
  if (dim > (std::uint64_t{1} << 36)) throw FormatError("implausible model dimension");
  f.model.C = detail::get_f64(in, "C");
  f.model.tolerance = detail::get_f64(in, "tolerance");
  f.model.seed = detail::get_le<std::uint64_t>(in, "seed");
  f.model.epochs_run = detail::get_le<std::uint64_t>(in, "epochs");
  f.model.duality_gap = detail::get_f64(in, "duality gap");
  f.model.support_vectors = detail::get_le<std::uint64_t>(in, "support vectors");
  const auto kind = detail::get_le<std::uint8_t>(in, "feature kind");
  if (kind > 1) throw FormatError("unknown feature kind");
  f.space.kind = static_cast<FeatureSpace::Kind>(kind);
  f.space.normalize = detail::get_le<std::uint8_t>(in, "normalize") != 0;
  f.space.k = detail::get_le<std::uint32_t>(in, "k");
  f.space.b = detail::get_le<std::uint8_t>(in, "b");
  const auto family = detail::get_le<std::uint8_t>(in, "family kind");
  if (family > 1) throw FormatError("unknown family kind");
  f.space.family = static_cast<FamilyKind>(family);
  f.space.family_seed = detail::get_le<std::uint64_t>(in, "family seed");
  f.space.universe_size = detail::get_le<std::uint64_t>(in, "universe size");
  f.model.weights.reserve(dim);
  for (std::uint64_t i = 0; i < dim; ++i) f.model.weights.push_back(detail::get_f64(in, "weights"));
  return f;
}

}  // namespace bbit
