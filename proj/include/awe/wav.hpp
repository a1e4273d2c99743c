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

#include <filesystem>
#include <span>
#include <vector>

namespace awe::wav {

struct Audio {
  std::vector<float> samples;  // mono, [-1, 1]
  int sample_rate_hz = 0;

  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
};

// RIFF/WAVE with 16-bit PCM or 32-bit IEEE float; multichannel is downmixed.
Audio read_wav(const std::filesystem::path& path);

// 16-bit PCM mono.
void write_wav(const Audio& audio, const std::filesystem::path& path);

// Samples covering [start_s, end_s), clamped to the signal.
std::span<const float> segment(const Audio& audio, double start_s,
                               double end_s);

}  // namespace awe::wav
