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

#include "awe/pipeline.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "awe/corpus.hpp"
#include "awe/embedding_file.hpp"
#include "awe/error.hpp"
#include "awe/eval.hpp"
#include "awe/feature_file.hpp"
#include "awe/features.hpp"
#include "awe/model/checkpoint.hpp"
#include "awe/model/embed.hpp"
#include "awe/model/trainer.hpp"
#include "awe/pairs.hpp"
#include "awe/wav.hpp"

namespace awe::pipeline {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDoneStamp = "DONE";

// FNV-1a over length-prefixed fields.
class Hasher {
 public:
  Hasher& add(std::string_view s) {
    mix_length(s.size());
    for (unsigned char c : s) mix(c);
    return *this;
  }
  Hasher& add(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return add(std::string_view(buf));
  }
  Hasher& add(std::uint64_t v) { return add(std::to_string(v)); }
  Hasher& add(int v) { return add(std::to_string(v)); }
  Hasher& add(bool v) { return add(std::string_view(v ? "1" : "0")); }
  Hasher& add_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return add(buf.str());
  }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, state_);
    return buf;
  }

 private:
  void mix(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  void mix_length(std::size_t n) {
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(n >> (8 * i)));
  }
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

struct StageDir {
  fs::path final_dir;
  fs::path work_dir;
  bool done = false;
};

StageDir open_stage(const fs::path& output_dir, const std::string& name,
                    const std::string& hash) {
  StageDir s;
  s.final_dir = output_dir / (name + "-" + hash);
  s.work_dir = output_dir / (name + "-" + hash + ".partial");
  s.done = fs::exists(s.final_dir / kDoneStamp);
  if (!s.done) {
    fs::remove_all(s.work_dir);
    fs::remove_all(s.final_dir);
    fs::create_directories(s.work_dir);
  }
  return s;
}

void close_stage(const StageDir& s, const std::string& hash) {
  {
    std::ofstream stamp(s.work_dir / kDoneStamp);
    stamp << hash << '\n';
    if (!stamp) throw IoError("cannot write stamp in " + s.work_dir.string());
  }
  fs::rename(s.work_dir, s.final_dir);
}

// Manifests written by the corpus stage carry absolute sources.
struct CorpusOutputs {
  corpus::Manifest train;
  corpus::Manifest dev;
  corpus::Manifest test;
  corpus::Manifest test_prime;
};

const char* kCorpusFiles[] = {"train.csv", "dev.csv", "test.csv",
                              "test_prime.csv"};

void run_corpus_stage(const RunConfig& cfg, const fs::path& dir) {
  using corpus::Split;
  auto load = [&](const fs::path& p, Split split) {
    return corpus::with_absolute_sources(
        corpus::load_manifest(p, split, cfg.language), p);
  };
  auto train = load(cfg.train_manifest, Split::kTrain);
  auto dev = load(cfg.dev_manifest, Split::kDev);
  auto test = load(cfg.test_manifest, Split::kTest);
  if (cfg.check_speakers) corpus::check_speaker_disjoint(train, dev, test);

  auto filter = [&](const corpus::Manifest& m) {
    bool freq = false;
    for (Split s : cfg.freq_filter_splits) freq = freq || s == m.split;
    return corpus::filter_instances(
        m, freq ? cfg.filter
                : corpus::FilterOptions::duration_only(cfg.filter.min_dur_s));
  };
  train = filter(train);
  dev = filter(dev);
  test = filter(test);
  const auto test_prime = corpus::build_test_prime(train, test);

  const corpus::Manifest* outputs[] = {&train, &dev, &test, &test_prime};
  std::ofstream stats(dir / "stats.txt");
  stats << "split,instances,unique_words,speakers,hours\n";
  const char* names[] = {"train", "dev", "test", "test_prime"};
  for (int i = 0; i < 4; ++i) {
    corpus::save_manifest(*outputs[i], dir / kCorpusFiles[i]);
    const auto st = corpus::stats(*outputs[i]);
    stats << names[i] << ',' << st.num_instances << ','
          << st.num_unique_words << ',' << st.num_speakers << ','
          << std::setprecision(6) << st.total_duration_h << '\n';
  }
}

CorpusOutputs load_corpus_stage(const RunConfig& cfg, const fs::path& dir) {
  using corpus::Split;
  return {corpus::load_manifest(dir / kCorpusFiles[0], Split::kTrain,
                                cfg.language),
          corpus::load_manifest(dir / kCorpusFiles[1], Split::kDev,
                                cfg.language),
          corpus::load_manifest(dir / kCorpusFiles[2], Split::kTest,
                                cfg.language),
          corpus::load_manifest(dir / kCorpusFiles[3], Split::kTest,
                                cfg.language)};
}

void run_features_stage(const RunConfig& cfg, const CorpusOutputs& c,
                        const fs::path& dir) {
  std::map<std::string, wav::Audio> audio_cache;
  std::map<std::string, features::FeatureSequence> utterance_cache;
  for (const corpus::Manifest* m : {&c.train, &c.dev, &c.test}) {
    for (const auto& inst : m->instances) {
      const fs::path out = features::feature_path(dir, inst.instance_id);
      if (fs::exists(out)) continue;
      features::FeatureSequence seq;
      if (cfg.features == FeatureSource::kMfcc) {
        auto it = audio_cache.find(inst.source);
        if (it == audio_cache.end()) {
          if (audio_cache.size() > 64) audio_cache.clear();
          it = audio_cache.emplace(inst.source, wav::read_wav(inst.source))
                   .first;
        }
        features::MfccConfig mfcc = cfg.mfcc;
        mfcc.sample_rate_hz = it->second.sample_rate_hz;
        seq = features::extract_mfcc(
            wav::segment(it->second, inst.start_s, inst.end_s), mfcc);
      } else if (cfg.context == Context::kWith) {
        auto it = utterance_cache.find(inst.source);
        if (it == utterance_cache.end()) {
          if (utterance_cache.size() > 64) utterance_cache.clear();
          it = utterance_cache
                   .emplace(inst.source,
                            features::read_feature_file(inst.source))
                   .first;
        }
        seq = features::slice_with_context(it->second, inst.start_s,
                                           inst.end_s);
      } else {
        seq = features::read_feature_file(inst.source);
        features::validate(seq);
      }
      features::write_feature_file(seq, out);
    }
  }
}

std::string format_ap(double ap) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", ap);
  return buf;
}

template <typename F>
auto in_stage(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const ConfigError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

std::string format_summary(const std::vector<SummaryRow>& rows) {
  const char* headers[] = {"method", "features", "context", "language", "set",
                           "ap"};
  std::vector<std::vector<std::string>> table;
  table.push_back({headers, headers + 6});
  for (const auto& r : rows) {
    table.push_back(
        {r.method, r.features, r.context, r.language, r.set, format_ap(r.ap)});
  }
  std::size_t widths[6] = {};
  for (const auto& line : table) {
    for (int i = 0; i < 6; ++i) widths[i] = std::max(widths[i], line[i].size());
  }
  std::ostringstream out;
  for (const auto& line : table) {
    for (int i = 0; i < 6; ++i) {
      if (i == 5) {
        out << line[i] << '\n';
      } else {
        out << std::left << std::setw(static_cast<int>(widths[i])) << line[i]
            << "  ";
      }
    }
  }
  out << '\n';
  out << "method,features,context,language,set,ap\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.features << ',' << r.context << ','
        << r.language << ',' << r.set << ',' << format_ap(r.ap) << '\n';
  }
  return out.str();
}

PipelineResult run_pipeline(const RunConfig& cfg, std::ostream* log) {
  validate(cfg);
  auto say = [&](const std::string& msg) {
    if (log) *log << msg << std::endl;
  };
  PipelineResult result;
  in_stage("setup", [&] {
    fs::create_directories(cfg.output_dir);
    return 0;
  });

  // corpus
  Hasher corpus_hash;
  corpus_hash.add(std::string_view("corpus/v1"))
      .add(cfg.language)
      .add(cfg.filter.min_dur_s)
      .add(static_cast<std::uint64_t>(cfg.filter.min_freq))
      .add(static_cast<std::uint64_t>(cfg.filter.max_freq))
      .add(cfg.check_speakers);
  for (auto s : cfg.freq_filter_splits) corpus_hash.add(corpus::to_string(s));
  for (const auto* p :
       {&cfg.train_manifest, &cfg.dev_manifest, &cfg.test_manifest}) {
    in_stage("corpus", [&] {
      corpus_hash.add(fs::absolute(*p).parent_path().string()).add_file(*p);
      return 0;
    });
  }
  const std::string corpus_key = corpus_hash.hex();
  const auto corpus_dir = in_stage("corpus", [&] {
    auto s = open_stage(cfg.output_dir, "corpus", corpus_key);
    if (!s.done) {
      run_corpus_stage(cfg, s.work_dir);
      close_stage(s, corpus_key);
    }
    result.stages.push_back({"corpus", s.final_dir, !s.done});
    return s.final_dir;
  });
  say("corpus: " + corpus_dir.string());
  const auto data =
      in_stage("corpus", [&] { return load_corpus_stage(cfg, corpus_dir); });

  // features
  Hasher features_hash;
  features_hash.add(std::string_view("features/v1"))
      .add(corpus_key)
      .add(to_string(cfg.features));
  if (cfg.features == FeatureSource::kMfcc) {
    features_hash.add(cfg.mfcc.window_ms)
        .add(cfg.mfcc.shift_ms)
        .add(cfg.mfcc.num_ceps)
        .add(cfg.mfcc.num_mel_filters)
        .add(cfg.mfcc.fft_size)
        .add(cfg.mfcc.pre_emphasis)
        .add(cfg.mfcc.log_floor)
        .add(cfg.mfcc.delta_window);
  } else {
    features_hash.add(to_string(cfg.context));
  }
  const std::string features_key = features_hash.hex();
  const auto features_dir = in_stage("features", [&] {
    auto s = open_stage(cfg.output_dir, "features", features_key);
    if (!s.done) {
      run_features_stage(cfg, data, s.work_dir);
      close_stage(s, features_key);
    }
    result.stages.push_back({"features", s.final_dir, !s.done});
    return s.final_dir;
  });
  say("features: " + features_dir.string());
  const auto store = in_stage("features", [&] {
    return features::FeatureStore::load_dir(
        features_dir, {&data.train, &data.dev, &data.test});
  });

  // train
  std::string upstream_key = features_key;
  std::optional<model::AweModel> model;
  if (cfg.arch != Arch::kMeanPool) {
    Hasher train_hash;
    const auto& m = cfg.model;
    const auto& t = cfg.train;
    train_hash.add(std::string_view("train/v1"))
        .add(features_key)
        .add(to_string(cfg.arch))
        .add(m.enc_layers)
        .add(m.bidirectional)
        .add(m.hidden_dim)
        .add(m.embed_dim)
        .add(m.dec_layers)
        .add(m.dropout)
        .add(t.learning_rate)
        .add(t.beta1)
        .add(t.beta2)
        .add(t.epsilon)
        .add(t.batch_size)
        .add(t.max_epochs)
        .add(t.bucket_batches)
        .add(cfg.seed);
    const std::string train_key = train_hash.hex();
    upstream_key = train_key;
    const auto train_dir = in_stage("train", [&] {
      auto s = open_stage(cfg.output_dir, "train", train_key);
      if (!s.done) {
        const auto pairs = cfg.arch == Arch::kCae
                               ? pairs::make_cae_pairs(data.train, cfg.seed)
                               : pairs::make_ae_pairs(data.train);
        model::AweModelConfig mc = cfg.model;
        mc.input_dim = store.get(data.train.instances.at(0).instance_id).dim();
        model::TrainConfig tc = cfg.train;
        tc.seed = cfg.seed;
        model::AweModel init(mc, cfg.seed);
        auto trained = model::train(
            std::move(init), pairs, store, tc,
            data.dev.empty() ? nullptr : &data.dev,
            [&](const model::EpochRecord& r) {
              char buf[96];
              std::snprintf(buf, sizeof buf, "epoch %d loss %.6g dev_ap %.4f",
                            r.epoch, r.loss, r.dev_ap);
              say(buf);
            });
        model::save_checkpoint(trained.model, s.work_dir / "model.awem");
        std::ofstream train_log(s.work_dir / "train_log.csv");
        model::write_train_log(trained.log, train_log);
        std::ofstream info(s.work_dir / "info.txt");
        info << "num_pairs: " << pairs.size() << '\n'
             << "best_epoch: " << trained.best_epoch << '\n';
        info.close();
        train_log.close();
        close_stage(s, train_key);
      }
      result.stages.push_back({"train", s.final_dir, !s.done});
      return s.final_dir;
    });
    say("train: " + train_dir.string());
    result.checkpoint_path = train_dir / "model.awem";
    model = in_stage("train",
                     [&] { return model::load_checkpoint(result.checkpoint_path); });
  }

  // eval
  Hasher eval_hash;
  eval_hash.add(std::string_view("eval/v1"))
      .add(upstream_key)
      .add(to_string(cfg.arch))
      .add(cfg.different_speakers_only);
  const std::string eval_key = eval_hash.hex();
  const auto eval_dir = in_stage("eval", [&] {
    auto s = open_stage(cfg.output_dir, "eval", eval_key);
    if (!s.done) {
      std::vector<SummaryRow> rows;
      const std::pair<const corpus::Manifest*, const char*> sets[] = {
          {&data.test, "test"}, {&data.test_prime, "test'"}};
      for (const auto& [manifest, tag] : sets) {
        if (manifest->size() < 2) continue;
        auto set = model ? model::embed_manifest(*model, *manifest, store)
                         : model::embed_manifest_mean_pool(*manifest, store);
        const std::string stem =
            std::string(tag) == "test" ? "test" : "test_prime";
        eval::write_embeddings(set, s.work_dir / (stem + ".awee"));
        eval::EvalOptions opts;
        opts.different_speakers_only = cfg.different_speakers_only;
        opts.block_size = cfg.block_size;
        opts.set_tag = tag;
        opts.language = cfg.language;
        const auto report = eval::evaluate(set, opts);
        std::ofstream rep(s.work_dir / ("report_" + stem + ".txt"));
        rep << eval::format_report(report);
        rows.push_back({std::string(method_name(cfg.arch)),
                        cfg.features == FeatureSource::kMfcc ? "mfcc" : "ssl",
                        cfg.features == FeatureSource::kMfcc
                            ? "n/a"
                            : std::string(to_string(cfg.context)),
                        cfg.language, tag, report.ap});
      }
      std::ofstream summary(s.work_dir / "summary.txt");
      summary << format_summary(rows);
      summary.close();
      close_stage(s, eval_key);
    }
    result.stages.push_back({"eval", s.final_dir, !s.done});
    return s.final_dir;
  });
  say("eval: " + eval_dir.string());

  in_stage("eval", [&] {
    std::ifstream in(eval_dir / "summary.txt");
    std::ostringstream text;
    text << in.rdbuf();
    result.summary_path = cfg.output_dir / "summary.txt";
    std::ofstream out(result.summary_path);
    out << text.str();
    std::istringstream lines(text.str());
    std::string line;
    bool csv = false;
    while (std::getline(lines, line)) {
      if (line == "method,features,context,language,set,ap") {
        csv = true;
        continue;
      }
      if (!csv || line.empty()) continue;
      std::istringstream fields(line);
      SummaryRow row;
      std::string ap;
      std::getline(fields, row.method, ',');
      std::getline(fields, row.features, ',');
      std::getline(fields, row.context, ',');
      std::getline(fields, row.language, ',');
      std::getline(fields, row.set, ',');
      std::getline(fields, ap, ',');
      row.ap = std::stod(ap);
      result.rows.push_back(row);
    }
    return 0;
  });
  return result;
}

}  // namespace awe::pipeline
