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
#include <span>
#include <string_view>

#include <Eigen/Core>

namespace awe::features {

enum class SourceKind : std::uint8_t { kMfcc = 0, kSsl = 1 };

std::string_view to_string(SourceKind kind);

// Frames are rows. Storage is always float32.
using FrameMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct FeatureSequence {
  FrameMatrix data;
  int frame_shift_ms = 20;
  SourceKind source_kind = SourceKind::kMfcc;

  int num_frames() const { return static_cast<int>(data.rows()); }
  int dim() const { return static_cast<int>(data.cols()); }
  double duration_s() const { return num_frames() * frame_shift_ms / 1000.0; }
};

// Throws ValidationError if empty, non-finite, or shift <= 0.
void validate(const FeatureSequence& seq);

struct MfccConfig {
  int sample_rate_hz = 16000;
  double window_ms = 30.0;
  double shift_ms = 20.0;
  int num_ceps = 20;
  int num_mel_filters = 40;
  int fft_size = 0;  // 0: next power of two >= window samples
  double pre_emphasis = 0.97;
  double log_floor = 1e-10;
  int delta_window = 2;

  int window_samples() const;
  int shift_samples() const;
  int resolved_fft_size() const;
  void validate() const;
};

bool is_supported_sample_rate(int sample_rate_hz);

// floor((num_samples - window) / shift) + 1, or 0 when shorter than a window.
int num_frames_for(std::size_t num_samples, const MfccConfig& cfg);

// Static cepstra only (num_frames x num_ceps), double precision.
Eigen::MatrixXd mfcc_static(std::span<const float> samples,
                            const MfccConfig& cfg);

// Static + delta + delta-delta, dim = 3 * num_ceps.
FeatureSequence extract_mfcc(std::span<const float> samples,
                             const MfccConfig& cfg);

// Regression deltas with edge replication over +/- window frames.
Eigen::MatrixXd delta(const Eigen::MatrixXd& frames, int window);

// [static | delta | delta-delta]; output dim = 3 * input dim.
FeatureSequence compute_deltas(const FeatureSequence& statics, int window = 2);

struct FrameRange {
  int begin = 0;
  int end = 0;  // exclusive
};

// [floor(start/shift), ceil(end/shift)) clamped to [0, num_frames).
FrameRange slice_bounds(int num_frames, int frame_shift_ms, double start_s,
                        double end_s);

FeatureSequence slice_with_context(const FeatureSequence& utterance,
                                   double start_s, double end_s);

Eigen::VectorXf mean_pool(const FeatureSequence& seq);

}  // namespace awe::features
