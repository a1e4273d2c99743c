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
#include <vector>

#include "awe/corpus.hpp"
#include "awe/feature_file.hpp"
#include "awe/model/config.hpp"
#include "awe/synth.hpp"

namespace awe::testing {

// Train/dev/test corpora over the same word types with disjoint speakers.
struct SynthSplits {
  synth::SynthCorpus train;
  synth::SynthCorpus dev;
  synth::SynthCorpus test;
  features::FeatureStore store;  // train + dev + test
};

// 30 word types: 20 training instances per type from 10 speakers, 6 dev
// instances from 5 speakers, 10 test instances from another 10 speakers.
SynthSplits make_synth_splits(std::uint64_t seed,
                              const synth::SynthConfig& base = {});

// Desk-scale model used by the end-to-end checks.
model::AweModelConfig small_model(int input_dim);
model::TrainConfig small_training(std::uint64_t seed, int max_epochs = 30);

// Copies every instance's features from `from` into `into`.
void merge_into(features::FeatureStore& into, const corpus::Manifest& m,
                const features::FeatureStore& from);

}  // namespace awe::testing
