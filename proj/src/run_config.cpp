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

#include "awe/run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "awe/error.hpp"

namespace awe::pipeline {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "run.output_dir",        "run.language",
      "run.seed",              "data.train_manifest",
      "data.dev_manifest",     "data.test_manifest",
      "data.features",         "data.context",
      "corpus.min_dur",        "corpus.min_freq",
      "corpus.max_freq",       "corpus.freq_filter_splits",
      "corpus.check_speakers",
      "mfcc.window_ms",        "mfcc.shift_ms",
      "mfcc.num_ceps",         "mfcc.num_mel_filters",
      "model.arch",            "model.enc_layers",
      "model.bidirectional",   "model.hidden_dim",
      "model.embed_dim",       "model.dec_layers",
      "model.dropout",         "train.learning_rate",
      "train.batch_size",      "train.max_epochs",
      "train.bucket_batches",  "eval.different_speakers_only",
      "eval.block_size",
  };
  return keys;
}

class Fields {
 public:
  explicit Fields(const pt::ptree& tree) : tree_(tree) {}

  bool has(const std::string& key) const {
    return tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))
        .has_value();
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    return v ? *v : fallback;
  }

  template <typename T>
  T num(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    const std::string s = str(key, "");
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(key, "not a number: '" + s + "'");
    }
    return value;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string s = str(key, "");
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key, "not a boolean: '" + s + "'");
  }

 private:
  const pt::ptree& tree_;
};

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

std::string_view to_string(FeatureSource f) {
  return f == FeatureSource::kMfcc ? "mfcc" : "ssl-file";
}

std::string_view to_string(Context c) {
  return c == Context::kWith ? "with" : "without";
}

std::string_view to_string(Arch a) {
  switch (a) {
    case Arch::kCae:
      return "cae";
    case Arch::kAe:
      return "ae";
    case Arch::kMeanPool:
      return "mean-pool";
  }
  return "?";
}

std::string_view method_name(Arch a) {
  switch (a) {
    case Arch::kCae:
      return "cae-rnn";
    case Arch::kAe:
      return "ae-rnn";
    case Arch::kMeanPool:
      return "mean-pool";
  }
  return "?";
}

RunConfig parse_run_config(std::istream& in,
                           const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("<file>", e.message() + " at line " +
                                    std::to_string(e.line()));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(section, "key outside of any section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known_keys().contains(full)) {
        throw ConfigError(full, "unknown key");
      }
    }
  }

  Fields f(tree);
  RunConfig cfg;
  cfg.output_dir = resolve(base_dir, f.str("run.output_dir", ""));
  cfg.language = f.str("run.language", cfg.language);
  cfg.seed = f.num<std::uint64_t>("run.seed", 0);
  cfg.train.seed = cfg.seed;

  cfg.train_manifest = resolve(base_dir, f.str("data.train_manifest", ""));
  cfg.dev_manifest = resolve(base_dir, f.str("data.dev_manifest", ""));
  cfg.test_manifest = resolve(base_dir, f.str("data.test_manifest", ""));
  const std::string feats = f.str("data.features", "mfcc");
  if (feats == "mfcc") {
    cfg.features = FeatureSource::kMfcc;
  } else if (feats == "ssl-file") {
    cfg.features = FeatureSource::kSslFile;
  } else {
    throw ConfigError("data.features", "expected mfcc or ssl-file, got '" +
                                           feats + "'");
  }
  const std::string ctx = f.str("data.context", "with");
  if (ctx == "with") {
    cfg.context = Context::kWith;
  } else if (ctx == "without") {
    cfg.context = Context::kWithout;
  } else {
    throw ConfigError("data.context", "expected with or without, got '" +
                                          ctx + "'");
  }

  cfg.filter.min_dur_s = f.num<double>("corpus.min_dur", cfg.filter.min_dur_s);
  cfg.filter.min_freq = f.num<std::size_t>("corpus.min_freq", cfg.filter.min_freq);
  cfg.filter.max_freq = f.num<std::size_t>("corpus.max_freq", cfg.filter.max_freq);
  if (f.has("corpus.freq_filter_splits")) {
    cfg.freq_filter_splits.clear();
    std::stringstream ss(f.str("corpus.freq_filter_splits", ""));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      if (item.empty()) continue;
      try {
        cfg.freq_filter_splits.push_back(corpus::parse_split(item));
      } catch (const ValidationError&) {
        throw ConfigError("corpus.freq_filter_splits",
                          "unknown split '" + item + "'");
      }
    }
  }
  cfg.check_speakers = f.flag("corpus.check_speakers", cfg.check_speakers);

  cfg.mfcc.window_ms = f.num<double>("mfcc.window_ms", cfg.mfcc.window_ms);
  cfg.mfcc.shift_ms = f.num<double>("mfcc.shift_ms", cfg.mfcc.shift_ms);
  cfg.mfcc.num_ceps = f.num<int>("mfcc.num_ceps", cfg.mfcc.num_ceps);
  cfg.mfcc.num_mel_filters =
      f.num<int>("mfcc.num_mel_filters", cfg.mfcc.num_mel_filters);

  const std::string arch = f.str("model.arch", "cae");
  if (arch == "cae") {
    cfg.arch = Arch::kCae;
  } else if (arch == "ae") {
    cfg.arch = Arch::kAe;
  } else if (arch == "mean-pool") {
    cfg.arch = Arch::kMeanPool;
  } else {
    throw ConfigError("model.arch", "expected cae, ae or mean-pool, got '" +
                                        arch + "'");
  }
  cfg.model.enc_layers = f.num<int>("model.enc_layers", cfg.model.enc_layers);
  cfg.model.bidirectional = f.flag("model.bidirectional", cfg.model.bidirectional);
  cfg.model.hidden_dim = f.num<int>("model.hidden_dim", cfg.model.hidden_dim);
  cfg.model.embed_dim = f.num<int>("model.embed_dim", cfg.model.embed_dim);
  cfg.model.dec_layers = f.num<int>("model.dec_layers", cfg.model.dec_layers);
  cfg.model.dropout = f.num<double>("model.dropout", cfg.model.dropout);

  cfg.train.learning_rate =
      f.num<double>("train.learning_rate", cfg.train.learning_rate);
  cfg.train.batch_size = f.num<int>("train.batch_size", cfg.train.batch_size);
  cfg.train.max_epochs = f.num<int>("train.max_epochs", cfg.train.max_epochs);
  cfg.train.bucket_batches =
      f.num<int>("train.bucket_batches", cfg.train.bucket_batches);

  cfg.different_speakers_only =
      f.flag("eval.different_speakers_only", cfg.different_speakers_only);
  cfg.block_size = f.num<std::size_t>("eval.block_size", cfg.block_size);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  auto cfg = parse_run_config(in, path.parent_path());
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("run.output_dir", "required");
  if (cfg.language.empty() || cfg.language.find_first_of(",\n") != std::string::npos) {
    throw ConfigError("run.language", "must be a plain non-empty code");
  }
  const std::pair<const char*, const std::filesystem::path*> manifests[] = {
      {"data.train_manifest", &cfg.train_manifest},
      {"data.dev_manifest", &cfg.dev_manifest},
      {"data.test_manifest", &cfg.test_manifest}};
  for (const auto& [field, path] : manifests) {
    if (path->empty()) throw ConfigError(field, "required");
    if (!std::filesystem::exists(*path)) {
      throw ConfigError(field, "no such file: " + path->string());
    }
  }
  if (cfg.filter.min_freq > cfg.filter.max_freq) {
    throw ConfigError("corpus.min_freq", "exceeds corpus.max_freq");
  }
  if (!(cfg.filter.min_dur_s >= 0.0)) {
    throw ConfigError("corpus.min_dur", "must be >= 0");
  }
  if (cfg.features == FeatureSource::kMfcc) {
    try {
      cfg.mfcc.validate();
    } catch (const Error& e) {
      throw ConfigError("mfcc", e.what());
    }
  }
  if (cfg.arch != Arch::kMeanPool) {
    try {
      cfg.model.validate();
    } catch (const Error& e) {
      throw ConfigError("model", e.what());
    }
    try {
      cfg.train.validate();
    } catch (const Error& e) {
      throw ConfigError("train", e.what());
    }
  }
  if (cfg.block_size == 0) throw ConfigError("eval.block_size", "must be > 0");
}

}  // namespace awe::pipeline
