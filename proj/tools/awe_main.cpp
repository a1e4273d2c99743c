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

// Command-line entry point: corpus, features, pairs, train, embed, eval,
// analyze, run, synth.
//
// Exit codes: 0 success, 1 usage error, 2 config error, 3 stage failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "awe/analysis.hpp"
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
#include "awe/pipeline.hpp"
#include "awe/run_config.hpp"
#include "awe/synth.hpp"
#include "awe/wav.hpp"

namespace {

namespace fs = std::filesystem;
using namespace awe;

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

// Writes to `path`, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw IoError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

corpus::Manifest load(const std::string& path, const std::string& language) {
  return corpus::with_absolute_sources(
      corpus::load_manifest(path, corpus::Split::kTrain, language), path);
}

fs::path manifest_dir(const std::string& path) {
  return fs::absolute(path).parent_path();
}

void print_stats(const corpus::Manifest& m) {
  const auto st = corpus::stats(m);
  std::printf("instances: %zu\nunique_words: %zu\nspeakers: %zu\nhours: %.4f\n",
              st.num_instances, st.num_unique_words, st.num_speakers,
              st.total_duration_h);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acoustic word embedding toolkit"};
  app.require_subcommand(1);

  std::string language;
  app.add_option("--language", language, "Language tag for manifests");

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "Manifest tools");
  corpus_cmd->require_subcommand(1);
  std::string manifest_path, out_path, train_path, test_path;
  double min_dur = 0.5;
  std::size_t min_freq = 5, max_freq = 50;
  auto* c_stats = corpus_cmd->add_subcommand("stats", "Print corpus statistics");
  c_stats->add_option("--manifest", manifest_path)->required();
  auto* c_filter = corpus_cmd->add_subcommand("filter", "Duration and frequency filter");
  c_filter->add_option("--manifest", manifest_path)->required();
  c_filter->add_option("--out", out_path, "Output manifest (default stdout)");
  c_filter->add_option("--min-dur", min_dur, "Minimum duration in seconds");
  c_filter->add_option("--min-freq", min_freq);
  c_filter->add_option("--max-freq", max_freq);
  bool duration_only = false;
  c_filter->add_flag("--duration-only", duration_only,
                     "Skip the frequency bounds");
  auto* c_prime = corpus_cmd->add_subcommand("test-prime",
                                             "Test instances of unseen words");
  c_prime->add_option("--train", train_path)->required();
  c_prime->add_option("--test", test_path)->required();
  c_prime->add_option("--out", out_path);

  // features
  auto* feat_cmd = app.add_subcommand("features", "Feature extraction");
  feat_cmd->require_subcommand(1);
  std::string out_dir, slice_mode = "with-context";
  features::MfccConfig mfcc;
  auto* f_mfcc = feat_cmd->add_subcommand("mfcc", "MFCC + deltas per instance");
  f_mfcc->add_option("--manifest", manifest_path)->required();
  f_mfcc->add_option("--out-dir", out_dir)->required();
  f_mfcc->add_option("--window-ms", mfcc.window_ms);
  f_mfcc->add_option("--shift-ms", mfcc.shift_ms);
  f_mfcc->add_option("--num-ceps", mfcc.num_ceps);
  f_mfcc->add_option("--num-mel-filters", mfcc.num_mel_filters);
  auto* f_slice = feat_cmd->add_subcommand(
      "slice", "Per-instance features from precomputed feature files");
  f_slice->add_option("--manifest", manifest_path)->required();
  f_slice->add_option("--out-dir", out_dir)->required();
  f_slice->add_option("--mode", slice_mode)
      ->check(CLI::IsMember({"with-context", "precut"}));

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "Training and evaluation pairs");
  pairs_cmd->require_subcommand(1);
  std::uint64_t seed = 0;
  for (const char* name : {"cae", "ae", "eval"}) {
    auto* sub = pairs_cmd->add_subcommand(name, std::string(name) + " pairs");
    sub->add_option("--manifest", manifest_path)->required();
    sub->add_option("--out", out_path);
    if (std::string(name) == "cae") sub->add_option("--seed", seed);
  }

  // train
  auto* train_cmd = app.add_subcommand("train", "Train an AE-RNN or CAE-RNN");
  std::string arch = "cae", features_dir, dev_path, checkpoint_path, log_path;
  model::AweModelConfig model_cfg;
  model::TrainConfig train_cfg;
  train_cmd->add_option("--arch", arch)->check(CLI::IsMember({"cae", "ae"}));
  train_cmd->add_option("--manifest", manifest_path, "Training manifest")
      ->required();
  train_cmd->add_option("--dev-manifest", dev_path);
  train_cmd->add_option("--features-dir", features_dir)->required();
  train_cmd->add_option("--out", checkpoint_path, "Checkpoint path")->required();
  train_cmd->add_option("--log", log_path, "Per-epoch CSV log");
  train_cmd->add_option("--enc-layers", model_cfg.enc_layers);
  train_cmd->add_option("--dec-layers", model_cfg.dec_layers);
  train_cmd->add_option("--hidden-dim", model_cfg.hidden_dim);
  train_cmd->add_option("--embed-dim", model_cfg.embed_dim);
  train_cmd->add_option("--dropout", model_cfg.dropout);
  bool unidirectional = false;
  train_cmd->add_flag("--unidirectional", unidirectional);
  train_cmd->add_option("--lr", train_cfg.learning_rate);
  train_cmd->add_option("--batch-size", train_cfg.batch_size);
  train_cmd->add_option("--epochs", train_cfg.max_epochs);
  train_cmd->add_option("--seed", seed);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed a manifest");
  bool mean_pool = false;
  auto* ckpt_opt = embed_cmd->add_option("--checkpoint", checkpoint_path);
  auto* mp_flag = embed_cmd->add_flag("--mean-pool", mean_pool,
                                      "Training-free frame average");
  ckpt_opt->excludes(mp_flag);
  embed_cmd->add_option("--manifest", manifest_path)->required();
  embed_cmd->add_option("--features-dir", features_dir)->required();
  embed_cmd->add_option("--out", out_path, "AWEE output")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Same-different AP");
  std::string embeddings_path, prime_against;
  eval::EvalOptions eval_opts;
  eval_cmd->add_option("--embeddings", embeddings_path)->required();
  eval_cmd->add_option("--test-prime-against", prime_against,
                       "Training manifest; restrict to unseen words");
  eval_cmd->add_flag("--different-speakers-only",
                     eval_opts.different_speakers_only);
  eval_cmd->add_option("--block-size", eval_opts.block_size);
  eval_cmd->add_option("--threads", eval_opts.num_threads);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Embedding analysis");
  analyze_cmd->require_subcommand(1);
  std::size_t top_k = 10;
  auto* a_anagrams = analyze_cmd->add_subcommand("anagrams", "Anagram distances");
  a_anagrams->add_option("--embeddings", embeddings_path)->required();
  a_anagrams->add_option("--out", out_path);
  auto* a_export = analyze_cmd->add_subcommand("export", "Labelled vectors");
  a_export->add_option("--embeddings", embeddings_path)->required();
  a_export->add_option("--top-k", top_k);
  a_export->add_option("--out", out_path);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a configured experiment");
  std::string config_path;
  run_cmd->add_option("--config", config_path)->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  synth::SynthConfig synth_cfg;
  std::string synth_mode = "precut";
  synth_cmd->add_option("--out-dir", out_dir)->required();
  synth_cmd->add_option("--mode", synth_mode)
      ->check(CLI::IsMember({"precut", "utterances", "audio"}));
  synth_cmd->add_option("--language", synth_cfg.language);
  synth_cmd->add_option("--seed", synth_cfg.seed);
  synth_cmd->add_option("--num-words", synth_cfg.num_words);
  synth_cmd->add_option("--instances-per-word", synth_cfg.instances_per_word);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (c_stats->parsed()) {
      print_stats(load(manifest_path, language));
    } else if (c_filter->parsed()) {
      const auto opts = duration_only
                            ? corpus::FilterOptions::duration_only(min_dur)
                            : corpus::FilterOptions{min_dur, min_freq, max_freq};
      Output out(out_path);
      corpus::write_manifest(
          corpus::filter_instances(load(manifest_path, language), opts),
          out.get());
    } else if (c_prime->parsed()) {
      Output out(out_path);
      corpus::write_manifest(
          corpus::build_test_prime(load(train_path, language),
                                   load(test_path, language)),
          out.get());
    } else if (f_mfcc->parsed()) {
      const auto m = load(manifest_path, language);
      const auto dir = manifest_dir(manifest_path);
      fs::create_directories(out_dir);
      std::map<std::string, wav::Audio> cache;
      for (const auto& inst : m.instances) {
        const auto src = corpus::resolve_source(dir, inst.source).string();
        auto it = cache.find(src);
        if (it == cache.end()) {
          if (cache.size() > 64) cache.clear();
          it = cache.emplace(src, wav::read_wav(src)).first;
        }
        features::MfccConfig cfg = mfcc;
        cfg.sample_rate_hz = it->second.sample_rate_hz;
        features::write_feature_file(
            features::extract_mfcc(
                wav::segment(it->second, inst.start_s, inst.end_s), cfg),
            features::feature_path(out_dir, inst.instance_id));
      }
    } else if (f_slice->parsed()) {
      const auto m = load(manifest_path, language);
      const auto dir = manifest_dir(manifest_path);
      fs::create_directories(out_dir);
      for (const auto& inst : m.instances) {
        const auto src = corpus::resolve_source(dir, inst.source);
        auto seq = features::read_feature_file(src);
        if (slice_mode == "with-context") {
          seq = features::slice_with_context(seq, inst.start_s, inst.end_s);
        } else {
          features::validate(seq);
        }
        features::write_feature_file(
            seq, features::feature_path(out_dir, inst.instance_id));
      }
    } else if (pairs_cmd->parsed()) {
      const auto m = load(manifest_path, language);
      Output out(out_path);
      if (pairs_cmd->got_subcommand("cae")) {
        pairs::write_pairs(pairs::make_cae_pairs(m, seed), out.get());
      } else if (pairs_cmd->got_subcommand("ae")) {
        pairs::write_pairs(pairs::make_ae_pairs(m), out.get());
      } else {
        pairs::write_eval_pairs(m, out.get());
      }
    } else if (train_cmd->parsed()) {
      const auto train_m = load(manifest_path, language);
      std::optional<corpus::Manifest> dev_m;
      if (!dev_path.empty()) dev_m = load(dev_path, language);
      std::vector<const corpus::Manifest*> ms = {&train_m};
      if (dev_m) ms.push_back(&*dev_m);
      const auto store = features::FeatureStore::load_dir(features_dir, ms);
      const auto& first = store.get(train_m.instances.at(0).instance_id);
      model_cfg.input_dim = first.dim();
      model_cfg.bidirectional = !unidirectional;
      train_cfg.seed = seed;
      try {
        model_cfg.validate();
        train_cfg.validate();
      } catch (const ValidationError& e) {
        throw ConfigError("train", e.what());
      }
      const auto pairs = arch == "cae" ? pairs::make_cae_pairs(train_m, seed)
                                       : pairs::make_ae_pairs(train_m);
      auto result = model::train(
          model::AweModel(model_cfg, seed), pairs, store, train_cfg,
          dev_m ? &*dev_m : nullptr, [](const model::EpochRecord& r) {
            std::fprintf(stderr, "epoch %d loss %.6g dev_ap %.4f\n", r.epoch,
                         r.loss, r.dev_ap);
          });
      model::save_checkpoint(result.model, checkpoint_path);
      if (!log_path.empty()) {
        Output out(log_path);
        model::write_train_log(result.log, out.get());
      }
      std::fprintf(stderr, "best epoch: %d\n", result.best_epoch);
    } else if (embed_cmd->parsed()) {
      if (checkpoint_path.empty() && !mean_pool) {
        throw ConfigError("--checkpoint", "give a checkpoint or --mean-pool");
      }
      const auto m = load(manifest_path, language);
      const auto store = features::FeatureStore::load_dir(features_dir, {&m});
      const auto set =
          mean_pool ? model::embed_manifest_mean_pool(m, store)
                    : model::embed_manifest(
                          model::load_checkpoint(checkpoint_path), m, store);
      eval::write_embeddings(set, out_path);
    } else if (eval_cmd->parsed()) {
      auto set = eval::read_embeddings(embeddings_path);
      eval_opts.language = language;
      if (!prime_against.empty()) {
        corpus::Manifest held;
        for (std::size_t i = 0; i < set.size(); ++i) {
          corpus::WordInstance inst;
          inst.instance_id = set.ids[i];
          inst.word = set.labels[i];
          inst.speaker_id = set.speakers[i];
          inst.end_s = 1.0;
          held.instances.push_back(inst);
        }
        set = eval::restrict_to(
            set, corpus::build_test_prime(load(prime_against, language), held));
        eval_opts.set_tag = "test'";
      }
      std::cout << eval::format_report(eval::evaluate(set, eval_opts));
    } else if (a_anagrams->parsed()) {
      const auto set = eval::read_embeddings(embeddings_path);
      std::set<std::string> vocab(set.labels.begin(), set.labels.end());
      const std::vector<std::string> words(vocab.begin(), vocab.end());
      const auto rows = analysis::anagram_report(
          set, analysis::find_anagram_pairs(words));
      Output out(out_path);
      analysis::write_anagram_report(rows, out.get());
    } else if (a_export->parsed()) {
      Output out(out_path);
      analysis::export_labeled_embeddings(eval::read_embeddings(embeddings_path),
                                          top_k, out.get());
    } else if (run_cmd->parsed()) {
      const auto cfg = pipeline::load_run_config(config_path);
      const auto result = pipeline::run_pipeline(cfg, &std::cerr);
      for (const auto& s : result.stages) {
        std::cerr << s.name << ": " << (s.executed ? "ran" : "skipped") << '\n';
      }
      std::ifstream summary(result.summary_path);
      std::cout << summary.rdbuf();
    } else if (synth_cmd->parsed()) {
      fs::create_directories(out_dir);
      using corpus::Split;
      const std::pair<Split, int> splits[] = {
          {Split::kTrain, 0}, {Split::kDev, 1}, {Split::kTest, 2}};
      for (const auto& [split, k] : splits) {
        synth::SynthConfig cfg = synth_cfg;
        cfg.seed = synth_cfg.seed * 3 + static_cast<std::uint64_t>(k);
        cfg.first_speaker = k * cfg.num_speakers;
        const fs::path path =
            fs::path(out_dir) / (std::string(corpus::to_string(split)) + ".csv");
        corpus::Manifest m;
        if (synth_mode == "audio") {
          m = synth::write_audio_corpus(cfg, split, out_dir);
        } else {
          auto c = synth::generate(cfg, split);
          if (synth_mode == "precut") {
            synth::write_precut(c, out_dir);
          } else {
            synth::write_utterances(c, out_dir);
          }
          m = std::move(c.manifest);
        }
        corpus::save_manifest(m, path);
        std::cout << path.string() << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return 0;
}
