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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "awe/corpus.hpp"
#include "awe/features.hpp"
#include "awe/model/config.hpp"

namespace awe::pipeline {

enum class FeatureSource { kMfcc, kSslFile };
enum class Context { kWith, kWithout };
enum class Arch { kCae, kAe, kMeanPool };

std::string_view to_string(FeatureSource f);
std::string_view to_string(Context c);
std::string_view to_string(Arch a);
// Table-style method names: cae-rnn, ae-rnn, mean-pool.
std::string_view method_name(Arch a);

// Declarative run description. File form is INI:
//
//   [run]    output_dir, language, seed
//   [data]   train_manifest, dev_manifest, test_manifest,
//            features = mfcc | ssl-file, context = with | without
//   [corpus] min_dur, min_freq, max_freq, freq_filter_splits, check_speakers
//   [mfcc]   window_ms, shift_ms, num_ceps, num_mel_filters
//   [model]  arch = cae | ae | mean-pool, enc_layers, bidirectional,
//            hidden_dim, embed_dim, dec_layers, dropout
//   [train]  learning_rate, batch_size, max_epochs, bucket_batches
//   [eval]   different_speakers_only, block_size
//
// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path output_dir;
  std::string language = "xx";
  std::uint64_t seed = 0;

  std::filesystem::path train_manifest;
  std::filesystem::path dev_manifest;
  std::filesystem::path test_manifest;
  FeatureSource features = FeatureSource::kMfcc;
  Context context = Context::kWith;

  corpus::FilterOptions filter;
  std::vector<corpus::Split> freq_filter_splits = {corpus::Split::kTrain};
  bool check_speakers = true;

  // The sample rate is taken from each audio file.
  features::MfccConfig mfcc;

  Arch arch = Arch::kCae;
  // input_dim is taken from the extracted features.
  model::AweModelConfig model;
  model::TrainConfig train;

  bool different_speakers_only = false;
  std::size_t block_size = std::size_t{1} << 20;
};

// Throws ConfigError naming the offending `section.key`.
RunConfig parse_run_config(std::istream& in,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Semantic checks, including that referenced manifests exist.
void validate(const RunConfig& cfg);

}  // namespace awe::pipeline
