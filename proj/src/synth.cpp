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

#include "awe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "awe/error.hpp"
#include "awe/random.hpp"
#include "awe/wav.hpp"

namespace awe::synth {
namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  return x;
}

Eigen::MatrixXd phone_inventory(const SynthConfig& cfg) {
  Rng rng(mix(cfg.family_seed, 1));
  Eigen::MatrixXd p(cfg.num_phones, cfg.dim);
  for (int i = 0; i < cfg.num_phones; ++i) {
    for (int d = 0; d < cfg.dim; ++d) p(i, d) = 2.0 * normal(rng);
  }
  return p;
}

struct Speaker {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

Speaker make_speaker(const SynthConfig& cfg, int speaker) {
  Rng rng(mix(mix(cfg.family_seed, 2), static_cast<std::uint64_t>(speaker)));
  Speaker s;
  s.a = Eigen::MatrixXd::Identity(cfg.dim, cfg.dim);
  for (int i = 0; i < cfg.dim; ++i) {
    for (int j = 0; j < cfg.dim; ++j) {
      s.a(i, j) += cfg.speaker_scale * normal(rng) / std::sqrt(cfg.dim);
    }
  }
  s.b.resize(cfg.dim);
  for (int d = 0; d < cfg.dim; ++d) s.b(d) = cfg.speaker_offset * normal(rng);
  return s;
}

std::string speaker_name(const SynthConfig& cfg, int speaker) {
  return cfg.language + "-spk" + std::to_string(speaker);
}

std::string word_name(const SynthConfig& cfg, int index) {
  return cfg.language + "w" + std::to_string(index);
}

}  // namespace

std::vector<int> word_phones(std::uint64_t family_seed, int index,
                             int num_phones, int min_phones, int max_phones) {
  // Enumerate the family's word types in order, skipping repeats, so a
  // given index always names the same distinct sequence.
  Rng rng(mix(family_seed, 3));
  std::set<std::vector<int>> seen;
  std::vector<int> seq;
  for (int i = 0; i <= index;) {
    const int len = min_phones + static_cast<int>(uniform_index(
                                     rng, static_cast<std::uint64_t>(
                                              max_phones - min_phones + 1)));
    seq.clear();
    for (int k = 0; k < len; ++k) {
      int p;
      do {
        p = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(num_phones)));
      } while (!seq.empty() && p == seq.back());
      seq.push_back(p);
    }
    if (seen.insert(seq).second) ++i;
  }
  return seq;
}

SynthCorpus generate(const SynthConfig& cfg, corpus::Split split) {
  if (cfg.num_words < 1 || cfg.instances_per_word < 1 || cfg.num_speakers < 1 ||
      cfg.dim < 1 || cfg.num_phones < 2 || cfg.min_phones < 1 ||
      cfg.max_phones < cfg.min_phones || cfg.min_frames_per_phone < 1 ||
      cfg.max_frames_per_phone < cfg.min_frames_per_phone) {
    throw ValidationError("invalid synthetic corpus config");
  }
  const Eigen::MatrixXd phones = phone_inventory(cfg);
  std::vector<Speaker> speakers;
  for (int s = 0; s < cfg.num_speakers; ++s) {
    speakers.push_back(make_speaker(cfg, cfg.first_speaker + s));
  }

  SynthCorpus out;
  out.manifest.split = split;
  out.manifest.language = cfg.language;
  Rng rng(mix(mix(cfg.seed, static_cast<std::uint64_t>(split)), 4));
  int serial = 0;
  for (int w = 0; w < cfg.num_words; ++w) {
    const int type = cfg.first_word + w;
    const auto seq = word_phones(cfg.family_seed, type, cfg.num_phones,
                                 cfg.min_phones, cfg.max_phones);
    for (int k = 0; k < cfg.instances_per_word; ++k) {
      const int spk = k % cfg.num_speakers;
      // Phone centres at cumulative durations; frames interpolate between
      // neighbouring centres with a raised-cosine weight.
      std::vector<double> centres;
      double t = 0.0;
      for (std::size_t p = 0; p < seq.size(); ++p) {
        const int dur = cfg.min_frames_per_phone +
                        static_cast<int>(uniform_index(
                            rng, static_cast<std::uint64_t>(
                                     cfg.max_frames_per_phone -
                                     cfg.min_frames_per_phone + 1)));
        centres.push_back(t + dur / 2.0);
        t += dur;
      }
      const int frames = static_cast<int>(t);
      features::FeatureSequence fs;
      fs.frame_shift_ms = 20;
      fs.source_kind = features::SourceKind::kSsl;
      fs.data.resize(frames, cfg.dim);
      for (int f = 0; f < frames; ++f) {
        const double x = f + 0.5;
        std::size_t hi = 0;
        while (hi < centres.size() && centres[hi] < x) ++hi;
        Eigen::VectorXd v;
        if (hi == 0) {
          v = phones.row(seq.front()).transpose();
        } else if (hi == centres.size()) {
          v = phones.row(seq.back()).transpose();
        } else {
          const double u = (x - centres[hi - 1]) / (centres[hi] - centres[hi - 1]);
          const double wgt = 0.5 - 0.5 * std::cos(std::numbers::pi * u);
          v = (1.0 - wgt) * phones.row(seq[hi - 1]).transpose() +
              wgt * phones.row(seq[hi]).transpose();
        }
        Eigen::VectorXd y = speakers[spk].a * v + speakers[spk].b;
        for (int d = 0; d < cfg.dim; ++d) y(d) += cfg.noise * normal(rng);
        fs.data.row(f) = y.cast<float>().transpose();
      }

      corpus::WordInstance inst;
      inst.instance_id = cfg.language + "-" +
                         std::string(corpus::to_string(split)) + "-" +
                         std::to_string(serial++);
      inst.word = word_name(cfg, type);
      inst.speaker_id = speaker_name(cfg, cfg.first_speaker + spk);
      inst.utterance_id = inst.instance_id;
      inst.start_s = 0.0;
      inst.end_s = frames * 0.02;
      inst.source = inst.instance_id + ".awef";
      out.features.put(inst.instance_id, std::move(fs));
      out.manifest.instances.push_back(std::move(inst));
    }
  }
  return out;
}

void write_precut(SynthCorpus& c, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (auto& w : c.manifest.instances) {
    const auto path = features::feature_path(dir, w.instance_id);
    features::write_feature_file(c.features.get(w.instance_id), path);
    w.source = path.filename().string();
  }
}

void write_utterances(SynthCorpus& c, const std::filesystem::path& dir,
                      int words_per_utterance, int gap_frames) {
  if (words_per_utterance < 1 || gap_frames < 0) {
    throw ValidationError("invalid utterance packing");
  }
  std::filesystem::create_directories(dir);
  auto& inst = c.manifest.instances;
  for (std::size_t begin = 0; begin < inst.size();
       begin += static_cast<std::size_t>(words_per_utterance)) {
    const std::size_t end =
        std::min(inst.size(), begin + static_cast<std::size_t>(words_per_utterance));
    const std::string utt = c.manifest.language + "-" +
                            std::string(corpus::to_string(c.manifest.split)) +
                            "-utt" + std::to_string(begin);
    int total = gap_frames;
    int dim = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& f = c.features.get(inst[i].instance_id);
      total += f.num_frames() + gap_frames;
      dim = f.dim();
    }
    features::FeatureSequence u;
    u.frame_shift_ms = 20;
    u.source_kind = features::SourceKind::kSsl;
    u.data = features::FrameMatrix::Zero(total, dim);
    int at = gap_frames;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& f = c.features.get(inst[i].instance_id);
      u.data.middleRows(at, f.num_frames()) = f.data;
      inst[i].utterance_id = utt;
      inst[i].start_s = at * 0.02;
      inst[i].end_s = (at + f.num_frames()) * 0.02;
      inst[i].source = utt + ".awef";
      at += f.num_frames() + gap_frames;
    }
    features::write_feature_file(u, dir / (utt + ".awef"));
  }
}

corpus::Manifest write_audio_corpus(const SynthConfig& cfg, corpus::Split split,
                                    const std::filesystem::path& dir,
                                    int words_per_utterance) {
  constexpr int kRate = 16000;
  std::filesystem::create_directories(dir);
  // Each phone is a pair of partials; speakers scale all frequencies.
  Rng inv_rng(mix(cfg.family_seed, 5));
  std::vector<std::pair<double, double>> partials;
  for (int p = 0; p < cfg.num_phones; ++p) {
    partials.emplace_back(uniform(inv_rng, 200.0, 900.0),
                          uniform(inv_rng, 1000.0, 3500.0));
  }
  Rng rng(mix(mix(cfg.seed, static_cast<std::uint64_t>(split)), 6));

  corpus::Manifest m;
  m.split = split;
  m.language = cfg.language;
  wav::Audio utt;
  utt.sample_rate_hz = kRate;
  int serial = 0, in_utt = 0, utt_index = 0;
  const auto gap = static_cast<std::size_t>(0.1 * kRate);
  const std::string utt_prefix =
      cfg.language + "-" + std::string(corpus::to_string(split)) + "-utt";
  auto flush = [&]() {
    if (in_utt == 0) return;
    utt.samples.insert(utt.samples.end(), gap, 0.0f);
    wav::write_wav(utt, dir / (utt_prefix + std::to_string(utt_index) + ".wav"));
    utt.samples.clear();
    in_utt = 0;
    ++utt_index;
  };
  for (int w = 0; w < cfg.num_words; ++w) {
    const int type = cfg.first_word + w;
    const auto seq = word_phones(cfg.family_seed, type, cfg.num_phones,
                                 cfg.min_phones, cfg.max_phones);
    for (int k = 0; k < cfg.instances_per_word; ++k) {
      const int spk = k % cfg.num_speakers;
      const double warp = 0.9 + 0.2 * spk / std::max(1, cfg.num_speakers - 1);
      if (in_utt == 0) utt.samples.assign(gap, 0.0f);
      const double start = static_cast<double>(utt.samples.size()) / kRate;
      for (int p : seq) {
        const double dur = uniform(rng, 0.17, 0.25);
        const auto n = static_cast<std::size_t>(dur * kRate);
        for (std::size_t i = 0; i < n; ++i) {
          const double t = static_cast<double>(i) / kRate;
          const double env = std::sin(std::numbers::pi * (i + 0.5) / n);
          const double s =
              0.3 * std::sin(2 * std::numbers::pi * partials[p].first * warp * t) +
              0.15 * std::sin(2 * std::numbers::pi * partials[p].second * warp * t);
          utt.samples.push_back(static_cast<float>(
              env * s + cfg.noise * 0.01 * normal(rng)));
        }
      }
      const double end = static_cast<double>(utt.samples.size()) / kRate;
      corpus::WordInstance inst;
      inst.instance_id = cfg.language + "-" +
                         std::string(corpus::to_string(split)) + "-" +
                         std::to_string(serial++);
      inst.word = word_name(cfg, type);
      inst.speaker_id = speaker_name(cfg, cfg.first_speaker + spk);
      inst.utterance_id = utt_prefix + std::to_string(utt_index);
      inst.start_s = start;
      inst.end_s = end;
      inst.source = inst.utterance_id + ".wav";
      m.instances.push_back(std::move(inst));
      if (++in_utt == words_per_utterance) flush();
    }
  }
  flush();
  return m;
}

}  // namespace awe::synth
