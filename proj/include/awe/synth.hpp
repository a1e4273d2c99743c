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
#include <string>
#include <vector>

#include "awe/corpus.hpp"
#include "awe/feature_file.hpp"

namespace awe::synth {

// Synthetic "spoken words": each word type is a sequence of phone targets
// drawn from a shared inventory; an instance is a smooth trajectory through
// those targets with per-phone duration jitter, passed through its speaker's
// affine transform, plus frame noise. Languages built from the same
// `family_seed` share the inventory; `first_word` selects a disjoint slice
// of word types.
struct SynthConfig {
  std::string language = "a";
  std::uint64_t family_seed = 7;
  std::uint64_t seed = 1;
  int first_word = 0;
  int num_words = 30;
  int instances_per_word = 20;
  int first_speaker = 0;
  int num_speakers = 10;
  int dim = 8;
  int num_phones = 6;
  int min_phones = 3;
  int max_phones = 4;
  int min_frames_per_phone = 3;
  int max_frames_per_phone = 6;
  double speaker_scale = 0.35;   // spread of the speaker matrix around I
  double speaker_offset = 1.0;   // spread of the speaker bias
  double noise = 0.1;
};

struct SynthCorpus {
  corpus::Manifest manifest;
  features::FeatureStore features;
};

// Precut word-level features. Instance ids: `<language>-<split>-<n>`.
SynthCorpus generate(const SynthConfig& cfg, corpus::Split split);

// The phone-target sequence of word type `index` in a family.
std::vector<int> word_phones(std::uint64_t family_seed, int index,
                             int num_phones, int min_phones, int max_phones);

// Writes `<dir>/<id>.awef` per instance and sets each `source` to that file
// name (relative to `dir`).
void write_precut(SynthCorpus& corpus, const std::filesystem::path& dir);

// Packs consecutive instances into utterance-level feature files of
// `words_per_utterance` words separated by `gap_frames` of silence-like
// frames; rewrites utterance_id/start_s/end_s/source to match.
void write_utterances(SynthCorpus& corpus, const std::filesystem::path& dir,
                      int words_per_utterance = 4, int gap_frames = 5);

// Tone-based audio words at 16 kHz, packed into utterances of
// `words_per_utterance` words, one WAV file per utterance. Word durations
// exceed 0.5 s.
corpus::Manifest write_audio_corpus(const SynthConfig& cfg, corpus::Split split,
                                    const std::filesystem::path& dir,
                                    int words_per_utterance = 3);

}  // namespace awe::synth
