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

#include "synth_setup.hpp"

namespace awe::testing {

SynthSplits make_synth_splits(std::uint64_t seed,
                              const synth::SynthConfig& base) {
  synth::SynthConfig train_cfg = base;
  train_cfg.seed = seed * 16 + 1;
  train_cfg.first_speaker = 0;
  train_cfg.num_speakers = 10;
  train_cfg.instances_per_word = 20;

  synth::SynthConfig dev_cfg = base;
  dev_cfg.seed = seed * 16 + 2;
  dev_cfg.first_speaker = 10;
  dev_cfg.num_speakers = 5;
  dev_cfg.instances_per_word = 6;

  synth::SynthConfig test_cfg = base;
  test_cfg.seed = seed * 16 + 3;
  test_cfg.first_speaker = 20;
  test_cfg.num_speakers = 10;
  test_cfg.instances_per_word = 10;

  SynthSplits s{synth::generate(train_cfg, corpus::Split::kTrain),
                synth::generate(dev_cfg, corpus::Split::kDev),
                synth::generate(test_cfg, corpus::Split::kTest),
                {}};
  merge_into(s.store, s.train.manifest, s.train.features);
  merge_into(s.store, s.dev.manifest, s.dev.features);
  merge_into(s.store, s.test.manifest, s.test.features);
  return s;
}

model::AweModelConfig small_model(int input_dim) {
  model::AweModelConfig cfg;
  cfg.input_dim = input_dim;
  cfg.enc_layers = 1;
  cfg.bidirectional = true;
  cfg.hidden_dim = 32;
  cfg.embed_dim = 16;
  cfg.dec_layers = 1;
  cfg.dropout = 0.0;
  return cfg;
}

model::TrainConfig small_training(std::uint64_t seed, int max_epochs) {
  model::TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 32;
  cfg.max_epochs = max_epochs;
  cfg.seed = seed;
  return cfg;
}

void merge_into(features::FeatureStore& into, const corpus::Manifest& m,
                const features::FeatureStore& from) {
  for (const auto& inst : m.instances) {
    into.put(inst.instance_id, from.get(inst.instance_id));
  }
}

}  // namespace awe::testing
