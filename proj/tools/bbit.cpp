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

// bbit: sketch, train, predict, estimate, kernel-check and bench.
//
// Exit codes: 0 success, 1 usage error, 2 data, format or IO error. Errors
// are printed as a single line "error[<CODE>]: <message>".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bbit/bbit.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bbit::IoError("cannot open input '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw bbit::IoError("cannot open output '" + path + "'");
  return out;
}

std::optional<std::uint64_t> universe_opt(std::uint64_t d) {
  return d ? std::optional<std::uint64_t>(d) : std::nullopt;
}

bbit::LabeledDataset load_svmlight(const std::string& path, std::optional<std::uint64_t> universe) {
  auto in = open_input(path);
  try {
    return bbit::parse_svmlight(in, universe);
  } catch (const bbit::ParseError& e) {
    throw bbit::ParseError(path + ": " + e.what(), 0);
  } catch (const bbit::InvalidArgument& e) {
    throw bbit::InvalidArgument(path + ": " + e.what());
  }
}

bbit::SketchFile load_sketches(const std::string& path) {
  auto in = open_input(path);
  try {
    return bbit::SketchFile::read(in);
  } catch (const bbit::FormatError& e) {
    throw bbit::FormatError(path + ": " + e.what());
  }
}

bool is_sketch_file(const std::string& path) {
  auto in = open_input(path);
  return bbit::looks_like_sketch_file(in);
}

// Labels of a sketch file live next to it, one per line, in row order.
std::string labels_path_for(const std::string& sketch_path) { return sketch_path + ".labels"; }

void write_labels(const std::string& path, const std::vector<int>& labels) {
  auto out = open_output(path);
  for (int y : labels) out << (y > 0 ? "+1" : "-1") << '\n';
  if (!out) throw bbit::IoError("failed writing '" + path + "'");
}

std::vector<int> read_labels(const std::string& path, std::size_t expected) {
  auto in = open_input(path);
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v = 0;
    std::istringstream is(line);
    if (!(is >> v)) throw bbit::ParseError(path + ": label is not a number", line_no);
    labels.push_back(v > 0 ? 1 : -1);
  }
  if (labels.size() != expected) {
    throw bbit::FormatError(path + ": " + std::to_string(labels.size()) + " labels for " + std::to_string(expected) +
                            " sketch rows");
  }
  return labels;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw CLI::ValidationError("list", "cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------- sketch

struct SketchArgs {
  std::string input, output;
  std::uint64_t k = 200;
  unsigned b = 8;
  std::string family = "exact";
  std::uint64_t seed = 1;
  std::uint64_t universe = 0;
};

void cmd_sketch(const SketchArgs& a) {
  const auto t0 = Clock::now();
  const auto data = load_svmlight(a.input, universe_opt(a.universe));
  const double load_s = seconds_since(t0);
  const auto t1 = Clock::now();
  const auto sk = bbit::sketch_dataset(data, a.k, a.b, bbit::parse_family_kind(a.family), a.seed);
  const double sketch_s = seconds_since(t1);
  {
    auto out = open_output(a.output);
    sk.write(out);
  }
  write_labels(labels_path_for(a.output), data.labels);
  std::cout << "n=" << sk.rows() << " k=" << sk.k() << " b=" << sk.bits() << " D=" << sk.universe_size()
            << " seed=" << sk.seed() << " family=" << a.family << " payload_bytes=" << sk.payload().size()
            << " load_seconds=" << load_s << " sketch_seconds=" << sketch_s << '\n';
}

// ----------------------------------------------------------------- train

struct TrainArgs {
  std::string input, output, labels;
  double C = 1.0;
  double tol = 0.1;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 1;
  bool normalize = true;
  std::uint64_t universe = 0;
  std::string family = "exact";
};

template <bbit::RowSource Rows>
bbit::SvmModel train_and_report(const Rows& rows, std::span<const int> labels, const TrainArgs& a, double load_s) {
  bbit::TrainOptions opt;
  opt.C = a.C;
  opt.tolerance = a.tol;
  opt.max_epochs = a.max_epochs;
  opt.seed = a.seed;
  opt.record_history = false;
  const auto t0 = Clock::now();
  auto r = bbit::train(rows, labels, opt);
  const double train_s = seconds_since(t0);
  const double acc = bbit::evaluate(r.model, rows, labels);
  std::cout << "n=" << rows.rows() << " dimension=" << rows.dimension() << " epochs=" << r.model.epochs_run
            << " converged=" << (r.converged ? 1 : 0) << " duality_gap=" << r.model.duality_gap
            << " nsv=" << r.model.support_vectors << " train_accuracy=" << acc << " load_seconds=" << load_s
            << " train_seconds=" << train_s << '\n';
  return std::move(r.model);
}

void cmd_train(const TrainArgs& a) {
  bbit::FeatureSpace space;
  space.normalize = a.normalize;
  bbit::SvmModel model;
  const auto t0 = Clock::now();
  if (is_sketch_file(a.input)) {
    const auto sk = load_sketches(a.input);
    const auto labels = read_labels(a.labels.empty() ? labels_path_for(a.input) : a.labels, sk.rows());
    const double load_s = seconds_since(t0);
    space.kind = bbit::FeatureSpace::Kind::sketch;
    space.k = static_cast<std::uint32_t>(sk.k());
    space.b = sk.bits();
    space.family = bbit::parse_family_kind(a.family);
    space.family_seed = sk.seed();
    space.universe_size = sk.universe_size();
    model = train_and_report(bbit::expand_dataset(sk, a.normalize), labels, a, load_s);
  } else {
    const auto data = load_svmlight(a.input, universe_opt(a.universe));
    const double load_s = seconds_since(t0);
    space.kind = bbit::FeatureSpace::Kind::raw;
    space.universe_size = data.universe_size;
    model = train_and_report(bbit::BinaryRows(data.samples, data.universe_size, a.normalize), data.labels, a, load_s);
  }
  auto out = open_output(a.output);
  bbit::write_model(out, model, space);
}

// --------------------------------------------------------------- predict

struct PredictArgs {
  std::string model, input, labels, decisions;
};

template <bbit::RowSource Rows>
void predict_and_report(const bbit::SvmModel& model, const Rows& rows, std::span<const int> labels,
                        const PredictArgs& a, double load_s) {
  const auto t0 = Clock::now();
  std::vector<bbit::Prediction> preds;
  preds.reserve(rows.rows());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    preds.push_back(bbit::predict(model, rows, i));
    correct += preds.back().label == labels[i];
  }
  const double compute_s = seconds_since(t0);
  if (rows.rows() == 0) throw bbit::InvalidArgument("test set is empty");
  if (!a.decisions.empty()) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (a.decisions != "-") {
      file = open_output(a.decisions);
      out = &file;
    }
    *out << std::setprecision(17);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      *out << "sample=" << i << " label=" << labels[i] << " predicted=" << preds[i].label
           << " decision=" << preds[i].decision << '\n';
    }
  }
  std::cout << "n=" << rows.rows() << " accuracy=" << static_cast<double>(correct) / static_cast<double>(rows.rows())
            << " load_seconds=" << load_s << " compute_seconds=" << compute_s << '\n';
}

void cmd_predict(const PredictArgs& a) {
  const auto t0 = Clock::now();
  bbit::ModelFile mf;
  {
    auto in = open_input(a.model);
    try {
      mf = bbit::read_model(in);
    } catch (const bbit::FormatError& e) {
      throw bbit::FormatError(a.model + ": " + e.what());
    }
  }
  const auto& space = mf.space;
  if (space.kind == bbit::FeatureSpace::Kind::sketch) {
    bbit::SketchFile sk = [&] {
      if (is_sketch_file(a.input)) return load_sketches(a.input);
      // Raw test data is sketched here with the model's own family.
      const auto data = load_svmlight(a.input, space.universe_size);
      return bbit::sketch_dataset(data, space.k, space.b, space.family, space.family_seed);
    }();
    bbit::check_same_family(space, sk);
    std::vector<int> labels;
    if (is_sketch_file(a.input)) {
      labels = read_labels(a.labels.empty() ? labels_path_for(a.input) : a.labels, sk.rows());
    } else {
      labels = load_svmlight(a.input, space.universe_size).labels;
    }
    const double load_s = seconds_since(t0);
    const auto rows = bbit::expand_dataset(sk, space.normalize);
    if (rows.dimension() != mf.model.dimension()) throw bbit::FormatError("model dimension differs from expanded input");
    predict_and_report(mf.model, rows, labels, a, load_s);
  } else {
    if (is_sketch_file(a.input)) throw bbit::FormatError("model was trained on raw features; input is a sketch file");
    const auto data = load_svmlight(a.input, std::nullopt);
    const double load_s = seconds_since(t0);
    predict_and_report(mf.model, bbit::BinaryRows(data.samples, data.universe_size, space.normalize), data.labels, a,
                       load_s);
  }
}

// -------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string set1, set2, input, ids;
  std::uint64_t k = 200;
  unsigned b = 8;
  std::uint64_t seed = 1;
  std::uint64_t universe = 0;
  std::string family = "exact";
};

void cmd_estimate(const EstimateArgs& a) {
  std::optional<bbit::SparseBinarySet> s1, s2;
  if (!a.input.empty()) {
    const auto data = load_svmlight(a.input, universe_opt(a.universe));
    const auto ids = parse_list<std::size_t>(a.ids);
    if (ids.size() != 2) throw CLI::ValidationError("--ids", "expected two sample ids i,j");
    if (ids[0] >= data.size() || ids[1] >= data.size()) throw bbit::InvalidArgument("sample id out of range");
    s1 = data.samples[ids[0]];
    s2 = data.samples[ids[1]];
  } else {
    if (a.set1.empty() || a.set2.empty()) throw CLI::ValidationError("estimate", "give --set1 and --set2, or --input and --ids");
    auto i1 = parse_list<std::uint64_t>(a.set1);
    auto i2 = parse_list<std::uint64_t>(a.set2);
    std::uint64_t d = a.universe;
    if (d == 0) {
      for (auto x : i1) d = std::max(d, x + 1);
      for (auto x : i2) d = std::max(d, x + 1);
      d = std::max<std::uint64_t>(d, 2);
    }
    s1.emplace(std::move(i1), d);
    s2.emplace(std::move(i2), d);
  }
  const auto kind = bbit::parse_family_kind(a.family);
  const auto family = bbit::build_family(kind, a.k, s1->universe_size(), a.seed);
  const auto m1 = bbit::minhash(*s1, family);
  const auto m2 = bbit::minhash(*s2, family);
  const auto b1 = bbit::truncate(m1, a.b);
  const auto b2 = bbit::truncate(m2, a.b);
  const auto ratio = bbit::resemblance_ratio(*s1, *s2);
  const auto theory = bbit::bbit_collision_probability(s1->cardinality(), s2->cardinality(), ratio.num,
                                                        s1->universe_size(), a.b);
  const auto est = bbit::bbit_estimate(b1, b2, s1->cardinality(), s2->cardinality(), s1->universe_size());
  const double R = ratio.value();
  const double P = theory.probability;
  const double k = static_cast<double>(a.k);
  const double band_minwise = 3.0 * std::sqrt(bbit::minwise_variance(R, a.k));
  const double band_bbit = 3.0 * std::sqrt(P * (1.0 - P) / k) / (1.0 - theory.correction.C2);
  std::cout << std::setprecision(10);
  std::cout << "f1=" << s1->cardinality() << " f2=" << s2->cardinality() << " a=" << ratio.num
            << " D=" << s1->universe_size() << " k=" << a.k << " b=" << a.b << " family=" << a.family << '\n';
  std::cout << "R_exact=" << R << '\n';
  std::cout << "R_minwise=" << bbit::minwise_estimate(m1, m2) << " band_3sigma=" << band_minwise << '\n';
  std::cout << "R_bbit=" << est.resemblance << " band_3sigma=" << band_bbit << '\n';
  std::cout << "P_b_theory=" << P << '\n';
  std::cout << "P_b_hat=" << est.match_fraction << '\n';
}

// ---------------------------------------------------------- kernel-check

struct KernelArgs {
  std::string input, kind = "all";
  std::size_t n = 20;
  std::uint64_t k = 200;
  unsigned b = 8;
  std::uint64_t seed = 1;
  std::uint64_t universe = 0;
  std::string family = "exact";
  std::size_t random_sets = 0;
  std::size_t set_size = 50;
};

void cmd_kernel_check(const KernelArgs& a) {
  std::vector<bbit::SparseBinarySet> sets;
  if (!a.input.empty()) {
    auto data = load_svmlight(a.input, universe_opt(a.universe));
    const std::size_t n = std::min(a.n, data.size());
    sets.assign(data.samples.begin(), data.samples.begin() + static_cast<std::ptrdiff_t>(n));
  } else if (a.random_sets > 0) {
    const std::uint64_t d = a.universe ? a.universe : 1000;
    bbit::Rng rng(bbit::derive_seed(a.seed, {0x736574ULL}));
    for (std::size_t i = 0; i < a.random_sets; ++i) {
      std::vector<std::uint64_t> idx;
      const std::size_t f = 1 + bbit::uniform_below(rng, std::max<std::size_t>(a.set_size, 1));
      for (std::size_t t = 0; t < f; ++t) idx.push_back(bbit::uniform_below(rng, d));
      sets.emplace_back(std::move(idx), d);
    }
  } else {
    throw CLI::ValidationError("kernel-check", "give --input or --random");
  }
  if (sets.empty()) throw bbit::InvalidArgument("no sets to check");
  const auto family = bbit::build_family(bbit::parse_family_kind(a.family), a.k, sets.front().universe_size(), a.seed);

  std::vector<bbit::GramMatrix> mats;
  const bool all = a.kind == "all";
  if (all || a.kind == "resemblance") mats.push_back(bbit::resemblance_matrix(sets));
  if (all || a.kind == "minwise") mats.push_back(bbit::minwise_matrix(sets, family, 0));
  if (all || a.kind == "bbit" || a.kind == "expanded") {
    std::vector<bbit::BBitSketch> rows;
    for (const auto& s : sets) rows.push_back(bbit::truncate(bbit::minhash(s, family), a.b));
    if (all || a.kind == "bbit") mats.push_back(bbit::bbit_matrix(rows));
    if (all || a.kind == "expanded") mats.push_back(bbit::expanded_gram(rows, true));
  }
  if (mats.empty()) throw CLI::ValidationError("--kind", "unknown matrix kind '" + a.kind + "'");
  std::cout << std::setprecision(10);
  for (const auto& m : mats) {
    const double ev = bbit::min_eigenvalue(m);
    std::cout << "kind=" << bbit::to_string(m.kind()) << " order=" << m.order() << " min_eigenvalue=" << ev
              << " psd=" << (ev >= -1e-10 * static_cast<double>(m.order()) ? 1 : 0) << '\n';
  }
}

// ----------------------------------------------------------------- bench

struct BenchArgs {
  std::string input, b_grid = "1,2,4,8,16", k_grid = "30,50,100,200,500", C_grid = "0.01,0.1,1,10";
  std::uint64_t universe = 0;
  bbit::BenchOptions opt;
  std::string family = "exact";
  bool no_raw = false;
};

void cmd_bench(BenchArgs a) {
  const auto data = load_svmlight(a.input, universe_opt(a.universe));
  a.opt.b_grid = parse_list<unsigned>(a.b_grid);
  a.opt.k_grid = parse_list<std::uint64_t>(a.k_grid);
  a.opt.C_grid = parse_list<double>(a.C_grid);
  a.opt.family = bbit::parse_family_kind(a.family);
  a.opt.include_raw = !a.no_raw;
  if (a.opt.trials < 2) throw CLI::ValidationError("--trials", "at least 2 trials are needed for a standard deviation");
  const auto report = bbit::run_bench(data, a.opt);
  bbit::print_table(std::cout, report);
  bbit::print_rows(std::cout, report);
}

// ------------------------------------------------------------- synthetic

struct SynthArgs {
  std::string output;
  bbit::PlantedOptions opt;
};

void cmd_synth(const SynthArgs& a) {
  const auto d = bbit::make_planted_dataset(a.opt);
  auto out = open_output(a.output);
  bbit::write_svmlight(out, d);
  std::cout << "n=" << d.size() << " D=" << d.universe_size << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"b-bit minwise hashing sketches and linear SVM training"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, std::uint64_t* seed, std::uint64_t* universe) {
    sub->add_option("--seed", *seed, "Random seed")->capture_default_str();
    if (universe) sub->add_option("--universe-size", *universe, "Universe size D (default: max index + 1)");
  };
  const auto family_check = CLI::IsMember({"exact", "affine"});

  SketchArgs sk;
  auto* s = app.add_subcommand("sketch", "Sketch an svmlight file into a b-bit sketch file");
  s->add_option("-i,--input", sk.input, "svmlight input")->required();
  s->add_option("-o,--output", sk.output, "Sketch file output")->required();
  s->add_option("--k", sk.k, "Permutations")->capture_default_str();
  s->add_option("--b", sk.b, "Bits per value")->capture_default_str();
  s->add_option("--family", sk.family, "Permutation family")->check(family_check)->capture_default_str();
  add_common(s, &sk.seed, &sk.universe);
  s->callback([&] { cmd_sketch(sk); });

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a linear SVM on a sketch file or raw svmlight data");
  t->add_option("-i,--input", tr.input, "Sketch file or svmlight input")->required();
  t->add_option("-o,--output", tr.output, "Model output")->required();
  t->add_option("--labels", tr.labels, "Labels for a sketch file (default: <input>.labels)");
  t->add_option("--C", tr.C, "Penalty")->capture_default_str();
  t->add_option("--tol", tr.tol, "Stopping tolerance on max |projected gradient|")->capture_default_str();
  t->add_option("--max-epochs", tr.max_epochs, "Epoch limit")->capture_default_str();
  t->add_flag("--normalize,!--no-normalize", tr.normalize, "Scale rows to unit norm")->capture_default_str();
  t->add_option("--family", tr.family, "Family kind the sketches were drawn with")->check(family_check);
  add_common(t, &tr.seed, &tr.universe);
  t->callback([&] { cmd_train(tr); });

  PredictArgs pr;
  auto* p = app.add_subcommand("predict", "Evaluate a model on test data");
  p->add_option("-m,--model", pr.model, "Model file")->required();
  p->add_option("-i,--input", pr.input, "Sketch file or svmlight input")->required();
  p->add_option("--labels", pr.labels, "Labels for a sketch file (default: <input>.labels)");
  p->add_option("--decisions", pr.decisions, "Write per-sample decisions to this file ('-' for stdout)");
  p->callback([&] { cmd_predict(pr); });

  EstimateArgs es;
  auto* e = app.add_subcommand("estimate", "Compare exact and estimated resemblance of two sets");
  e->add_option("--set1", es.set1, "Comma-separated 0-based indices");
  e->add_option("--set2", es.set2, "Comma-separated 0-based indices");
  e->add_option("-i,--input", es.input, "svmlight file to take the two samples from");
  e->add_option("--ids", es.ids, "Two 0-based sample ids, e.g. 0,5");
  e->add_option("--k", es.k, "Permutations")->capture_default_str();
  e->add_option("--b", es.b, "Bits per value")->capture_default_str();
  e->add_option("--family", es.family, "Permutation family")->check(family_check)->capture_default_str();
  add_common(e, &es.seed, &es.universe);
  e->callback([&] { cmd_estimate(es); });

  KernelArgs kc;
  auto* kcs = app.add_subcommand("kernel-check", "Minimum eigenvalue of resemblance / minwise / b-bit matrices");
  kcs->add_option("-i,--input", kc.input, "svmlight input (first --n samples)");
  kcs->add_option("--n", kc.n, "Samples taken from the input")->capture_default_str();
  kcs->add_option("--random", kc.random_sets, "Use this many random sets instead of an input file");
  kcs->add_option("--set-size", kc.set_size, "Max size of random sets")->capture_default_str();
  kcs->add_option("--kind", kc.kind, "resemblance, minwise, bbit, expanded or all")
      ->check(CLI::IsMember({"resemblance", "minwise", "bbit", "expanded", "all"}))
      ->capture_default_str();
  kcs->add_option("--k", kc.k, "Permutations")->capture_default_str();
  kcs->add_option("--b", kc.b, "Bits per value")->capture_default_str();
  kcs->add_option("--family", kc.family, "Permutation family")->check(family_check)->capture_default_str();
  add_common(kcs, &kc.seed, &kc.universe);
  kcs->callback([&] { cmd_kernel_check(kc); });

  BenchArgs be;
  be.opt.threads = std::max(1u, std::thread::hardware_concurrency());
  auto* bs = app.add_subcommand("bench", "Accuracy mean/std over repeated random splits for a (b, k, C) grid");
  bs->add_option("-i,--input", be.input, "svmlight input")->required();
  bs->add_option("--b-grid", be.b_grid, "Comma-separated b values")->capture_default_str();
  bs->add_option("--k-grid", be.k_grid, "Comma-separated k values")->capture_default_str();
  bs->add_option("--C-grid", be.C_grid, "Comma-separated C values")->capture_default_str();
  bs->add_option("--trials", be.opt.trials, "Random splits per cell (>= 2)")->capture_default_str();
  bs->add_option("--test-fraction", be.opt.test_fraction, "Fraction held out")->capture_default_str();
  bs->add_option("--tol", be.opt.tolerance, "Solver tolerance")->capture_default_str();
  bs->add_option("--max-epochs", be.opt.max_epochs, "Solver epoch limit")->capture_default_str();
  bs->add_option("--threads", be.opt.threads, "Worker threads")->capture_default_str();
  bs->add_option("--family", be.family, "Permutation family")->check(family_check)->capture_default_str();
  bs->add_flag("--normalize,!--no-normalize", be.opt.normalize, "Scale rows to unit norm")->capture_default_str();
  bs->add_flag("--no-raw", be.no_raw, "Skip the raw-feature baseline");
  add_common(bs, &be.opt.seed, &be.universe);
  bs->callback([&] { cmd_bench(be); });

  SynthArgs sy;
  auto* sys = app.add_subcommand("synth", "Write a synthetic planted-separator dataset in svmlight format");
  sys->add_option("-o,--output", sy.output, "svmlight output")->required();
  sys->add_option("--n", sy.opt.samples, "Samples")->capture_default_str();
  sys->add_option("--nonzeros", sy.opt.nonzeros, "Features per sample")->capture_default_str();
  sys->add_option("--pool-size", sy.opt.pool_size, "Features per class pool")->capture_default_str();
  sys->add_option("--informative", sy.opt.informative, "Features drawn from the class pool")->capture_default_str();
  sys->add_option("--noise", sy.opt.label_noise, "Label flip probability")->capture_default_str();
  std::uint64_t synth_universe = sy.opt.universe_size;
  sys->add_option("--universe-size", synth_universe, "Universe size D")->capture_default_str();
  sys->add_option("--seed", sy.opt.seed, "Random seed")->capture_default_str();
  sys->callback([&] {
    sy.opt.universe_size = synth_universe;
    cmd_synth(sy);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[E_USAGE]: " << e.what() << '\n';
    return 1;
  } catch (const bbit::Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error[E_INTERNAL]: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
