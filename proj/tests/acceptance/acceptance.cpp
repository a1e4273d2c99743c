// Copyright 2026 The AWE Toolkit Authors.
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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Criteria can be selected by name:
//   awe_acceptance [name ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "awe/corpus.hpp"
#include "awe/eval.hpp"
#include "awe/features.hpp"
#include "awe/model/embed.hpp"
#include "awe/model/loss.hpp"
#include "awe/model/network.hpp"
#include "awe/model/trainer.hpp"
#include "awe/pairs.hpp"
#include "awe/pipeline.hpp"
#include "awe/random.hpp"
#include "awe/synth.hpp"
#include "oracles.hpp"
#include "synth_setup.hpp"

namespace {

namespace fs = std::filesystem;
using namespace awe;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double positive_prior(const corpus::Manifest& m) {
  std::map<std::string, double> counts;
  for (const auto& w : m.instances) counts[w.word] += 1;
  double pos = 0;
  for (const auto& [word, n] : counts) pos += n * (n - 1) / 2;
  const double n = static_cast<double>(m.size());
  return pos / (n * (n - 1) / 2);
}

eval::EmbeddingSet random_set(Rng& rng, std::size_t n, int dim, int num_words,
                              bool integer_valued) {
  eval::EmbeddingSet set;
  set.vectors.resize(static_cast<Eigen::Index>(n), dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const bool duplicate = i > 0 && uniform01(rng) < 0.1;
    if (duplicate) {
      set.vectors.row(r) = set.vectors.row(
          static_cast<Eigen::Index>(uniform_index(rng, i)));
    } else {
      for (int d = 0; d < dim; ++d) {
        set.vectors(r, d) =
            integer_valued
                ? static_cast<float>(static_cast<int>(uniform_index(rng, 5)) - 2)
                : static_cast<float>(normal(rng));
      }
    }
    set.ids.push_back("i" + std::to_string(i));
    set.labels.push_back("w" + std::to_string(uniform_index(
                                   rng, static_cast<std::uint64_t>(num_words))));
    set.speakers.push_back("s" + std::to_string(uniform_index(rng, 4)));
  }
  return set;
}

std::vector<std::vector<double>> rows_of(const eval::EmbeddingSet& set) {
  std::vector<std::vector<double>> rows(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (float v : set.row(i)) rows[i].push_back(v);
  }
  return rows;
}

Outcome ap_oracle_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(20240601);
  double worst = 0.0;
  int checked = 0;
  const std::size_t block_sizes[] = {1, 64, std::size_t{1} << 20};
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + uniform_index(rng, 181);
    const int dim = 2 + static_cast<int>(uniform_index(rng, 15));
    const int words = 2 + static_cast<int>(uniform_index(rng, 19));
    auto set = random_set(rng, n, dim, words, trial % 2 == 0);
    const bool dso = trial % 4 == 1;
    double oracle;
    try {
      oracle = testing::ap_threshold_sweep(rows_of(set), set.labels,
                                           set.speakers, dso);
    } catch (const std::runtime_error&) {
      continue;  // no positives under this draw
    }
    eval::EvalOptions opts;
    opts.different_speakers_only = dso;
    opts.block_size = block_sizes[trial % 3];
    opts.num_threads = 1 + static_cast<unsigned>(trial % 3);
    const double ap = eval::evaluate(set, opts).ap;
    worst = std::max(worst, std::abs(ap - oracle));
    ++checked;
  }
  const double secs = seconds_since(t0);
  return {checked >= 18 && worst <= 1e-9 && secs < 10.0,
          std::to_string(checked) + " sets, max |diff| " + fmt("%.3g", worst) +
              ", " + fmt("%.2f s", secs)};
}

Outcome ap_performance() {
  Rng rng(5);
  const std::size_t n = 3163;  // n(n-1)/2 = 5,000,703
  auto set = random_set(rng, n, 128, 300, false);
  const auto t0 = Clock::now();
  const auto report = eval::evaluate(set);
  const double secs = seconds_since(t0);
  return {report.num_pairs >= 5'000'000 && secs <= 120.0 &&
              std::isfinite(report.ap),
          std::to_string(report.num_pairs) + " pairs of 128-d in " +
              fmt("%.2f s", secs)};
}

using DNet = model::Network<double>;
using DMat = model::Matrix<double>;

DMat random_sequence(Rng& rng, int dim, int frames) {
  DMat m(dim, frames);
  for (int t = 0; t < frames; ++t) {
    for (int d = 0; d < dim; ++d) m(d, t) = normal(rng);
  }
  return m;
}

Outcome gradient_check() {
  const auto t0 = Clock::now();
  model::AweModelConfig cfg;
  cfg.input_dim = 6;
  cfg.hidden_dim = 8;
  cfg.enc_layers = 2;
  cfg.dec_layers = 2;
  cfg.bidirectional = true;
  cfg.embed_dim = 5;
  cfg.dropout = 0.0;
  DNet net(cfg, 11);
  Rng rng(3);
  const std::pair<int, int> lengths[] = {{5, 7}, {4, 3}, {6, 6}};
  std::vector<DMat> xs, ys;
  for (auto [in, out] : lengths) {
    xs.push_back(random_sequence(rng, 6, in));
    ys.push_back(random_sequence(rng, 6, out));
  }
  std::vector<const DMat*> inputs, targets;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    inputs.push_back(&xs[i]);
    targets.push_back(&ys[i]);
  }
  net.forward_backward(inputs, targets, nullptr);

  const double h = 1e-3;
  double worst = 0.0;
  std::string worst_group;
  std::size_t groups = 0;
  for (auto& p : net.params()) {
    ++groups;
    const DMat analytic = p.grad;
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      // Fourth-order central difference.
      const double saved = p.value(i);
      auto loss_at = [&](double offset) {
        p.value(i) = saved + offset;
        return net.loss(inputs, targets);
      };
      const double numeric = (-loss_at(2 * h) + 8 * loss_at(h) -
                              8 * loss_at(-h) + loss_at(-2 * h)) /
                             (12 * h);
      p.value(i) = saved;
      const double a = analytic(i);
      const double rel = std::abs(a - numeric) /
                         std::max({std::abs(a), std::abs(numeric), 1e-6});
      if (rel > worst) {
        worst = rel;
        worst_group = p.name;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 60.0,
          std::to_string(groups) + " parameter groups, max relative error " +
              fmt("%.3g", worst) + " (" + worst_group + "), " +
              fmt("%.2f s", secs)};
}

Outcome loss_oracle() {
  Rng rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int batch = 1 + static_cast<int>(uniform_index(rng, 8));
    const int dim = 1 + static_cast<int>(uniform_index(rng, 10));
    std::vector<DMat> targets, outputs;
    std::vector<testing::Sequence> t_seq, o_seq;
    for (int b = 0; b < batch; ++b) {
      const int frames = 1 + static_cast<int>(uniform_index(rng, 30));
      targets.push_back(random_sequence(rng, dim, frames));
      outputs.push_back(random_sequence(rng, dim, frames));
      testing::Sequence ts(frames), os(frames);
      for (int t = 0; t < frames; ++t) {
        for (int d = 0; d < dim; ++d) {
          ts[t].push_back(targets.back()(d, t));
          os[t].push_back(outputs.back()(d, t));
        }
      }
      t_seq.push_back(std::move(ts));
      o_seq.push_back(std::move(os));
    }
    std::vector<const DMat*> tp, op;
    for (int b = 0; b < batch; ++b) {
      tp.push_back(&targets[b]);
      op.push_back(&outputs[b]);
    }
    const double got = model::reconstruction_loss<double>(tp, op);
    worst = std::max(worst,
                     std::abs(got - testing::loss_double_loop(t_seq, o_seq)));
  }

  // The network's own loss against the oracle on its decoded outputs.
  model::AweModelConfig cfg;
  cfg.input_dim = 4;
  cfg.hidden_dim = 6;
  cfg.enc_layers = 1;
  cfg.dec_layers = 2;
  cfg.embed_dim = 3;
  cfg.dropout = 0.0;
  DNet net(cfg, 5);
  std::vector<DMat> xs, ys;
  std::vector<testing::Sequence> t_seq, o_seq;
  for (int b = 0; b < 4; ++b) {
    xs.push_back(random_sequence(rng, 4, 3 + b));
    ys.push_back(random_sequence(rng, 4, 6 - b));
    const DMat y = net.decode(net.encode(xs.back()),
                              static_cast<int>(ys.back().cols()));
    testing::Sequence ts, os;
    for (Eigen::Index t = 0; t < y.cols(); ++t) {
      ts.emplace_back(ys.back().col(t).data(),
                      ys.back().col(t).data() + y.rows());
      os.emplace_back(y.col(t).data(), y.col(t).data() + y.rows());
    }
    t_seq.push_back(ts);
    o_seq.push_back(os);
  }
  std::vector<const DMat*> inputs, targets;
  for (int b = 0; b < 4; ++b) {
    inputs.push_back(&xs[b]);
    targets.push_back(&ys[b]);
  }
  const double net_diff =
      std::abs(net.loss(inputs, targets) - testing::loss_double_loop(t_seq, o_seq));
  return {worst <= 1e-10 && net_diff <= 1e-10,
          "100 batches, max |diff| " + fmt("%.3g", worst) +
              "; network loss vs oracle " + fmt("%.3g", net_diff)};
}

Outcome mfcc_correctness() {
  struct Signal {
    std::string name;
    int rate;
    std::vector<float> samples;
  };
  std::vector<Signal> signals;
  const double pi = std::numbers::pi;
  auto tone = [&](double hz, double secs, int rate) {
    std::vector<float> s(static_cast<std::size_t>(secs * rate));
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<float>(0.5 * std::sin(2 * pi * hz * i / rate));
    }
    return s;
  };
  auto chirp = [&](double f0, double f1, double secs, int rate) {
    std::vector<float> s(static_cast<std::size_t>(secs * rate));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double t = static_cast<double>(i) / rate;
      const double phase = 2 * pi * (f0 * t + 0.5 * (f1 - f0) / secs * t * t);
      s[i] = static_cast<float>(0.4 * std::sin(phase));
    }
    return s;
  };
  auto noise = [&](std::uint64_t seed, double secs, int rate) {
    Rng rng(seed);
    std::vector<float> s(static_cast<std::size_t>(secs * rate));
    for (auto& v : s) v = static_cast<float>(0.2 * normal(rng));
    return s;
  };
  signals.push_back({"tone 440 Hz", 16000, tone(440, 0.5, 16000)});
  signals.push_back({"tone 1 kHz", 16000, tone(1000, 0.37, 16000)});
  signals.push_back({"tone 3 kHz", 16000, tone(3000, 0.8, 16000)});
  signals.push_back({"chirp 100-4000 Hz", 16000, chirp(100, 4000, 0.6, 16000)});
  signals.push_back({"chirp 200-7000 Hz", 16000, chirp(200, 7000, 0.45, 16000)});
  signals.push_back({"chirp 50-2000 Hz", 16000, chirp(50, 2000, 1.0, 16000)});
  signals.push_back({"noise seed 1", 16000, noise(1, 0.5, 16000)});
  signals.push_back({"noise seed 2", 16000, noise(2, 0.031, 16000)});
  signals.push_back({"noise seed 3 at 8 kHz", 8000, noise(3, 0.7, 8000)});
  auto mix = tone(700, 0.55, 16000);
  const auto n = noise(4, 0.55, 16000);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += n[i];
  signals.push_back({"tone + noise", 16000, mix});

  double worst = 0.0;
  bool frames_ok = true;
  for (const auto& sig : signals) {
    features::MfccConfig cfg;
    cfg.sample_rate_hz = sig.rate;
    testing::MfccReferenceConfig ref_cfg;
    ref_cfg.sample_rate_hz = sig.rate;
    const auto got = features::extract_mfcc(sig.samples, cfg);
    const auto want = testing::mfcc_reference(sig.samples, ref_cfg);
    const int expected = testing::expected_frames(sig.samples.size(), ref_cfg);
    if (got.num_frames() != expected ||
        static_cast<int>(want.size()) != expected || got.dim() != 60) {
      frames_ok = false;
      continue;
    }
    for (int t = 0; t < expected; ++t) {
      for (int d = 0; d < 60; ++d) {
        worst = std::max(worst, std::abs(static_cast<double>(got.data(t, d)) -
                                         want[t][d]));
      }
    }
  }
  return {frames_ok && worst <= 1e-4,
          std::to_string(signals.size()) + " signals, frame counts " +
              (frames_ok ? "exact" : "MISMATCH") + ", max |diff| " +
              fmt("%.3g", worst)};
}

// Test-set AP of CAE-RNN, AE-RNN and mean pooling on one synthetic draw.
struct MethodAps {
  double cae = 0, ae = 0, mean_pool = 0, chance = 0;
};

MethodAps run_methods(std::uint64_t seed) {
  synth::SynthConfig family;
  family.family_seed = 100 + seed;
  const auto s = testing::make_synth_splits(seed, family);
  const int dim = synth::SynthConfig{}.dim;
  MethodAps out;
  out.chance = positive_prior(s.test.manifest);
  out.mean_pool = eval::evaluate(model::embed_manifest_mean_pool(
                                     s.test.manifest, s.store))
                      .ap;
  auto train_and_eval = [&](const std::vector<pairs::TrainPair>& pairs) {
    auto result = model::train(
        model::AweModel(testing::small_model(dim), seed), pairs, s.store,
        testing::small_training(seed), &s.dev.manifest);
    return eval::evaluate(
               model::embed_manifest(result.model, s.test.manifest, s.store))
        .ap;
  };
  out.cae = train_and_eval(pairs::make_cae_pairs(s.train.manifest, seed));
  out.ae = train_and_eval(pairs::make_ae_pairs(s.train.manifest));
  return out;
}

Outcome method_ordering() {
  const auto t0 = Clock::now();
  std::vector<double> cae_ae, ae_chance, cae_mp;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = run_methods(seed);
    cae_ae.push_back(r.cae - r.ae);
    ae_chance.push_back(r.ae - r.chance);
    cae_mp.push_back(r.cae - r.mean_pool);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "seed %d: cae %.3f ae %.3f mean-pool %.3f chance %.3f; ",
                  static_cast<int>(seed), r.cae, r.ae, r.mean_pool, r.chance);
    detail += buf;
  }
  const double m1 = median3(cae_ae), m2 = median3(ae_chance),
               m3 = median3(cae_mp);
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "median margins: cae-ae %.3f, ae-chance %.3f, cae-meanpool "
                "%.3f; %.1f s",
                m1, m2, m3, secs);
  return {m1 >= 0.05 && m2 >= 0.05 && m3 >= 0.05 && secs < 900.0,
          detail + buf};
}

Outcome zero_shot_transfer() {
  // Language A: 60 word types; language B: 30 other types of the family.
  synth::SynthConfig source;
  source.num_words = 60;
  source.instances_per_word = 12;
  source.num_speakers = 10;
  auto a = synth::generate(source, corpus::Split::kTrain);
  synth::SynthConfig source_dev = source;
  source_dev.seed = 2;
  source_dev.instances_per_word = 4;
  source_dev.first_speaker = 10;
  source_dev.num_speakers = 4;
  auto a_dev = synth::generate(source_dev, corpus::Split::kDev);
  features::FeatureStore store;
  testing::merge_into(store, a.manifest, a.features);
  testing::merge_into(store, a_dev.manifest, a_dev.features);
  const int dim = source.dim;
  auto result = model::train(
      model::AweModel(testing::small_model(dim), 1),
      pairs::make_cae_pairs(a.manifest, 1), store, testing::small_training(1),
      &a_dev.manifest);

  synth::SynthConfig target;
  target.language = "b";
  target.seed = 99;
  target.first_word = 60;
  target.first_speaker = 40;
  target.instances_per_word = 10;
  auto b = synth::generate(target, corpus::Split::kTest);
  const double ap =
      eval::evaluate(model::embed_manifest(result.model, b.manifest, b.features))
          .ap;
  const double prior = positive_prior(b.manifest);
  return {ap >= 10.0 * prior,
          "language a -> b AP " + fmt("%.3f", ap) + ", prior " +
              fmt("%.4f", prior) + ", ratio " + fmt("%.1f", ap / prior)};
}

corpus::Manifest random_manifest(Rng& rng) {
  corpus::Manifest m;
  const int words = 1 + static_cast<int>(uniform_index(rng, 15));
  for (int w = 0; w < words; ++w) {
    const int count = 1 + static_cast<int>(uniform_index(rng, 12));
    for (int k = 0; k < count; ++k) {
      corpus::WordInstance inst;
      inst.word = "w" + std::to_string(w);
      inst.speaker_id = "s" + std::to_string(uniform_index(rng, 5));
      inst.utterance_id = "u";
      inst.end_s = 1.0;
      m.instances.push_back(inst);
    }
  }
  std::vector<corpus::WordInstance> shuffled = m.instances;
  shuffle(std::span(shuffled), rng);
  m.instances = shuffled;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.instances[i].instance_id = "id" + std::to_string(i);
  }
  return m;
}

Outcome combinatorics() {
  Rng rng(50);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_manifest(rng);
    const std::size_t n = m.size();
    std::map<std::string, std::size_t> counts;
    for (const auto& w : m.instances) ++counts[w.word];
    std::size_t expected_cae = 0;
    for (const auto& [word, c] : counts) expected_cae += c * (c - 1);

    // CAE: exactly the ordered same-word pairs of distinct instances.
    std::set<std::pair<std::string, std::string>> brute;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && m.instances[a].word == m.instances[b].word) {
          brute.emplace(m.instances[a].instance_id, m.instances[b].instance_id);
        }
      }
    }
    const auto cae = pairs::make_cae_pairs(m, static_cast<std::uint64_t>(trial));
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& p : cae) got.emplace(p.input_id, p.target_id);
    const bool cae_ok = cae.size() == expected_cae && got.size() == cae.size() &&
                        got == brute;

    const auto ae = pairs::make_ae_pairs(m);
    bool ae_ok = ae.size() == n;
    for (std::size_t i = 0; ae_ok && i < n; ++i) {
      ae_ok = ae[i].input_id == m.instances[i].instance_id &&
              ae[i].target_id == m.instances[i].instance_id;
    }

    bool eval_ok = true;
    if (n >= 2) {
      const std::size_t block = 1 + uniform_index(rng, 40);
      pairs::EvalPairStream stream(m, block);
      std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
      std::vector<pairs::EvalPair> buf;
      std::uint64_t count = 0;
      while (stream.next(buf)) {
        for (const auto& p : buf) {
          ++count;
          eval_ok = eval_ok && p.index_a < p.index_b && p.index_b < n &&
                    p.is_same_word == (m.instances[p.index_a].word ==
                                       m.instances[p.index_b].word);
          seen.emplace(p.index_a, p.index_b);
        }
      }
      eval_ok = eval_ok && count == n * (n - 1) / 2 && seen.size() == count &&
                stream.total_pairs() == count;
    }
    if (!(cae_ok && ae_ok && eval_ok)) ++failures;
  }
  return {failures == 0,
          "50 manifests, " + std::to_string(failures) + " mismatches"};
}

Outcome test_prime_exclusion() {
  Rng rng(9);
  int failures = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    auto make = [&](int count, const char* prefix) {
      corpus::Manifest m;
      for (int i = 0; i < count; ++i) {
        corpus::WordInstance inst;
        inst.instance_id = std::string(prefix) + std::to_string(i);
        inst.word = "w" + std::to_string(uniform_index(rng, 25));
        inst.speaker_id = "s";
        inst.end_s = 1.0;
        m.instances.push_back(inst);
      }
      return m;
    };
    const auto train = make(static_cast<int>(uniform_index(rng, 40)), "tr");
    const auto test = make(1 + static_cast<int>(uniform_index(rng, 40)), "te");
    const auto prime = corpus::build_test_prime(train, test);
    std::set<std::string> train_vocab;
    for (const auto& w : train.instances) train_vocab.insert(w.word);
    std::vector<std::string> expected;
    for (const auto& w : test.instances) {
      if (!train_vocab.contains(w.word)) expected.push_back(w.instance_id);
    }
    std::vector<std::string> got;
    bool disjoint = true;
    for (const auto& w : prime.instances) {
      got.push_back(w.instance_id);
      disjoint = disjoint && !train_vocab.contains(w.word);
    }
    if (!disjoint || got != expected) ++failures;
  }
  return {failures == 0, std::to_string(trials) + " vocabulary draws, " +
                             std::to_string(failures) + " violations"};
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() /
                        ("awe-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path data = root / "data";
  auto write_split = [&](corpus::Split split, int first_speaker, int per_word,
                         std::uint64_t seed) {
    synth::SynthConfig cfg;
    cfg.num_words = 12;
    cfg.instances_per_word = per_word;
    cfg.first_speaker = first_speaker;
    cfg.num_speakers = 4;
    cfg.seed = seed;
    auto c = synth::generate(cfg, split);
    synth::write_utterances(c, data);
    const fs::path path =
        data / (std::string(corpus::to_string(split)) + ".csv");
    corpus::save_manifest(c.manifest, path);
    return path;
  };
  pipeline::RunConfig cfg;
  cfg.train_manifest = write_split(corpus::Split::kTrain, 0, 8, 1);
  cfg.dev_manifest = write_split(corpus::Split::kDev, 10, 3, 2);
  cfg.test_manifest = write_split(corpus::Split::kTest, 20, 4, 3);
  cfg.language = "a";
  cfg.seed = 42;
  cfg.features = pipeline::FeatureSource::kSslFile;
  cfg.context = pipeline::Context::kWith;
  cfg.filter = corpus::FilterOptions{0.0, 0, 1000};
  cfg.arch = pipeline::Arch::kCae;
  cfg.model = testing::small_model(8);
  cfg.model.dropout = 0.2;
  cfg.train = testing::small_training(42, 3);

  cfg.output_dir = root / "run1";
  const auto first = pipeline::run_pipeline(cfg);
  const auto rerun = pipeline::run_pipeline(cfg);
  cfg.output_dir = root / "run2";
  const auto second = pipeline::run_pipeline(cfg);

  const bool same_checkpoint = read_all(first.checkpoint_path) ==
                               read_all(second.checkpoint_path);
  const std::string summary1 = read_all(first.summary_path);
  const bool same_summary = summary1 == read_all(second.summary_path) &&
                            summary1 == read_all(rerun.summary_path);
  bool all_skipped = true;
  for (const auto& s : rerun.stages) all_skipped = all_skipped && !s.executed;
  fs::remove_all(root);
  return {same_checkpoint && same_summary && all_skipped &&
              !first.checkpoint_path.empty(),
          std::string("checkpoint ") + (same_checkpoint ? "identical" : "DIFFERS") +
              ", summary " + (same_summary ? "identical" : "DIFFERS") +
              ", rerun " + (all_skipped ? "skipped every stage" : "re-ran stages")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"ap-oracle-equivalence", ap_oracle_equivalence},
      {"ap-performance", ap_performance},
      {"gradient-check", gradient_check},
      {"loss-oracle", loss_oracle},
      {"mfcc-correctness", mfcc_correctness},
      {"method-ordering", method_ordering},
      {"zero-shot-transfer", zero_shot_transfer},
      {"pair-combinatorics", combinatorics},
      {"test-prime-exclusion", test_prime_exclusion},
      {"pipeline-determinism", determinism},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.name)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL",
                c.name.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
