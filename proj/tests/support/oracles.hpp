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

// Reference implementations used only by tests. They follow the textbook
// definitions directly and share no code with the library.

#include <string>
#include <vector>

namespace awe::testing {

// Same-different AP by explicit threshold sweep: every distinct distance is a
// threshold, pairs at or below it are predicted "same", and AP is the sum of
// precision(t) * (recall(t) - recall(t_prev)). Distances are cosine
// distances between rows, computed with plain loops.
double ap_threshold_sweep(const std::vector<std::vector<double>>& vectors,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& speakers = {},
                          bool different_speakers_only = false);

// Same sweep on precomputed (distance, is_same) pairs.
double ap_threshold_sweep(const std::vector<double>& distances,
                          const std::vector<bool>& is_same);

// Mean over pairs of sum over frames and dims of (target - output)^2.
// Sequences are [frame][dim].
using Sequence = std::vector<std::vector<double>>;
double loss_double_loop(const std::vector<Sequence>& targets,
                        const std::vector<Sequence>& outputs);

struct MfccReferenceConfig {
  int sample_rate_hz = 16000;
  double window_ms = 30.0;
  double shift_ms = 20.0;
  int num_ceps = 20;
  int num_filters = 40;
  double pre_emphasis = 0.97;
  double log_floor = 1e-10;
  int delta_window = 2;
};

// Frames x (3 * num_ceps): statics, deltas, delta-deltas. Direct O(N^2)
// DFT, triangular mel filters, log, orthonormal DCT-II, regression deltas.
std::vector<std::vector<double>> mfcc_reference(
    const std::vector<float>& samples, const MfccReferenceConfig& cfg = {});

// Frame count implied by the framing rule.
int expected_frames(std::size_t num_samples, const MfccReferenceConfig& cfg);

}  // namespace awe::testing
