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

#include "awe/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "awe/error.hpp"

namespace awe::features {
namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

// FFTW planning is not thread-safe; plans are cached per size and executed
// through the new-array interface, which is.
class FftPlanCache {
 public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  fftw_plan plan_for(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, p);
    return p;
  }

  ~FftPlanCache() {
    for (auto& [n, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mu_;
  std::map<int, fftw_plan> plans_;
};

// Triangular filters with edges equally spaced on the mel scale, 0 Hz to
// Nyquist; weights evaluated in the mel domain.
Eigen::MatrixXd mel_filterbank(const MfccConfig& cfg) {
  const int fft = cfg.resolved_fft_size();
  const int bins = fft / 2 + 1;
  const double nyquist = cfg.sample_rate_hz / 2.0;
  const double mel_hi = hz_to_mel(nyquist);
  const int m = cfg.num_mel_filters;
  const double mel_step = mel_hi / (m + 1);

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(m, bins);
  for (int k = 0; k < m; ++k) {
    const double left = k * mel_step;
    const double center = (k + 1) * mel_step;
    const double right = (k + 2) * mel_step;
    for (int b = 0; b < bins; ++b) {
      const double mel = hz_to_mel(static_cast<double>(b) *
                                   cfg.sample_rate_hz / fft);
      if (mel > left && mel <= center) {
        fb(k, b) = (mel - left) / (center - left);
      } else if (mel > center && mel < right) {
        fb(k, b) = (right - mel) / (right - center);
      }
    }
  }
  return fb;
}

Eigen::MatrixXd dct_matrix(int num_ceps, int num_filters) {
  Eigen::MatrixXd d(num_ceps, num_filters);
  const double m = num_filters;
  for (int j = 0; j < num_ceps; ++j) {
    const double scale = j == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
    for (int i = 0; i < num_filters; ++i) {
      d(j, i) = scale * std::cos(std::numbers::pi * j * (i + 0.5) / m);
    }
  }
  return d;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::kMfcc ? "mfcc" : "ssl";
}

void validate(const FeatureSequence& seq) {
  if (seq.num_frames() < 1) throw ValidationError("feature sequence is empty");
  if (seq.dim() < 1) throw ValidationError("feature dim must be positive");
  if (seq.frame_shift_ms <= 0) {
    throw ValidationError("frame shift must be positive");
  }
  if (!seq.data.allFinite()) {
    throw ValidationError("feature sequence has non-finite values");
  }
}

int MfccConfig::window_samples() const {
  return static_cast<int>(std::lround(sample_rate_hz * window_ms / 1000.0));
}

int MfccConfig::shift_samples() const {
  return static_cast<int>(std::lround(sample_rate_hz * shift_ms / 1000.0));
}

int MfccConfig::resolved_fft_size() const {
  if (fft_size > 0) return fft_size;
  int n = 1;
  while (n < window_samples()) n <<= 1;
  return n;
}

void MfccConfig::validate() const {
  if (!is_supported_sample_rate(sample_rate_hz)) {
    throw UnsupportedSampleRate("unsupported sample rate " +
                                std::to_string(sample_rate_hz) + " Hz");
  }
  if (!(window_ms > shift_ms && shift_ms > 0.0)) {
    throw ValidationError("MFCC config needs window_ms > shift_ms > 0");
  }
  if (num_ceps < 1 || num_ceps > num_mel_filters) {
    throw ValidationError("MFCC config needs 1 <= num_ceps <= num_mel_filters");
  }
  if (resolved_fft_size() < window_samples()) {
    throw ValidationError("fft_size smaller than the analysis window");
  }
  if (!(log_floor > 0.0) || delta_window < 1) {
    throw ValidationError("MFCC config needs log_floor > 0, delta_window >= 1");
  }
}

bool is_supported_sample_rate(int sample_rate_hz) {
  return sample_rate_hz == 8000 || sample_rate_hz == 16000 ||
         sample_rate_hz == 22050 || sample_rate_hz == 44100;
}

int num_frames_for(std::size_t num_samples, const MfccConfig& cfg) {
  const auto window = static_cast<std::size_t>(cfg.window_samples());
  const auto shift = static_cast<std::size_t>(cfg.shift_samples());
  if (num_samples < window) return 0;
  return static_cast<int>((num_samples - window) / shift + 1);
}

Eigen::MatrixXd mfcc_static(std::span<const float> samples,
                            const MfccConfig& cfg) {
  cfg.validate();
  const int frames = num_frames_for(samples.size(), cfg);
  if (frames < 1) {
    throw AudioTooShort("audio has " + std::to_string(samples.size()) +
                        " samples, need at least " +
                        std::to_string(cfg.window_samples()));
  }
  const int window = cfg.window_samples();
  const int shift = cfg.shift_samples();
  const int fft = cfg.resolved_fft_size();
  const int bins = fft / 2 + 1;

  std::vector<double> emphasized(samples.size());
  emphasized[0] = samples[0];
  for (std::size_t i = 1; i < samples.size(); ++i) {
    emphasized[i] = static_cast<double>(samples[i]) -
                    cfg.pre_emphasis * static_cast<double>(samples[i - 1]);
  }

  std::vector<double> hamming(window);
  for (int i = 0; i < window; ++i) {
    hamming[i] =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (window - 1));
  }

  const Eigen::MatrixXd fb = mel_filterbank(cfg);
  const Eigen::MatrixXd dct = dct_matrix(cfg.num_ceps, cfg.num_mel_filters);
  fftw_plan plan = FftPlanCache::instance().plan_for(fft);

  double* buf = fftw_alloc_real(fft);
  fftw_complex* spec = fftw_alloc_complex(bins);
  Eigen::VectorXd power(bins);
  Eigen::MatrixXd out(frames, cfg.num_ceps);
  for (int t = 0; t < frames; ++t) {
    const std::size_t offset = static_cast<std::size_t>(t) * shift;
    for (int i = 0; i < window; ++i) buf[i] = emphasized[offset + i] * hamming[i];
    for (int i = window; i < fft; ++i) buf[i] = 0.0;
    fftw_execute_dft_r2c(plan, buf, spec);
    for (int b = 0; b < bins; ++b) {
      power[b] = spec[b][0] * spec[b][0] + spec[b][1] * spec[b][1];
    }
    Eigen::VectorXd log_mel = (fb * power).array().max(cfg.log_floor).log();
    out.row(t) = (dct * log_mel).transpose();
  }
  fftw_free(buf);
  fftw_free(spec);
  return out;
}

Eigen::MatrixXd delta(const Eigen::MatrixXd& frames, int window) {
  if (window < 1) throw ValidationError("delta window must be >= 1");
  const Eigen::Index n = frames.rows();
  double denom = 0.0;
  for (int k = 1; k <= window; ++k) denom += 2.0 * k * k;

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, frames.cols());
  for (Eigen::Index t = 0; t < n; ++t) {
    for (int k = 1; k <= window; ++k) {
      const Eigen::Index ahead = std::min<Eigen::Index>(t + k, n - 1);
      const Eigen::Index behind = std::max<Eigen::Index>(t - k, 0);
      out.row(t) += k * (frames.row(ahead) - frames.row(behind));
    }
    out.row(t) /= denom;
  }
  return out;
}

namespace {

Eigen::MatrixXd stack_deltas(const Eigen::MatrixXd& statics, int window) {
  Eigen::MatrixXd d1 = delta(statics, window);
  Eigen::MatrixXd d2 = delta(d1, window);
  Eigen::MatrixXd out(statics.rows(), 3 * statics.cols());
  out << statics, d1, d2;
  return out;
}

}  // namespace

FeatureSequence extract_mfcc(std::span<const float> samples,
                             const MfccConfig& cfg) {
  Eigen::MatrixXd full = stack_deltas(mfcc_static(samples, cfg),
                                      cfg.delta_window);
  FeatureSequence seq;
  seq.data = full.cast<float>();
  seq.frame_shift_ms = static_cast<int>(std::lround(cfg.shift_ms));
  seq.source_kind = SourceKind::kMfcc;
  return seq;
}

FeatureSequence compute_deltas(const FeatureSequence& statics, int window) {
  FeatureSequence seq;
  seq.data = stack_deltas(statics.data.cast<double>(), window).cast<float>();
  seq.frame_shift_ms = statics.frame_shift_ms;
  seq.source_kind = statics.source_kind;
  return seq;
}

FrameRange slice_bounds(int num_frames, int frame_shift_ms, double start_s,
                        double end_s) {
  if (!(start_s >= 0.0) || !(end_s > start_s)) {
    throw ValidationError("slice needs 0 <= start_s < end_s");
  }
  // The epsilon absorbs decimal-seconds noise so exact frame boundaries
  // (e.g. 1.000 s at 20 ms) land on the intended frame.
  constexpr double kEps = 1e-9;
  const double first = std::floor(start_s * 1000.0 / frame_shift_ms + kEps);
  const double last = std::ceil(end_s * 1000.0 / frame_shift_ms - kEps);
  FrameRange r;
  r.begin = static_cast<int>(std::clamp<double>(first, 0.0, num_frames));
  r.end = static_cast<int>(std::clamp<double>(last, 0.0, num_frames));
  return r;
}

FeatureSequence slice_with_context(const FeatureSequence& utterance,
                                   double start_s, double end_s) {
  FrameRange r = slice_bounds(utterance.num_frames(), utterance.frame_shift_ms,
                              start_s, end_s);
  if (r.end <= r.begin) {
    throw EmptySlice("slice [" + std::to_string(start_s) + ", " +
                     std::to_string(end_s) + ") s is outside the utterance (" +
                     std::to_string(utterance.num_frames()) + " frames)");
  }
  FeatureSequence seq;
  seq.data = utterance.data.middleRows(r.begin, r.end - r.begin);
  seq.frame_shift_ms = utterance.frame_shift_ms;
  seq.source_kind = utterance.source_kind;
  return seq;
}

Eigen::VectorXf mean_pool(const FeatureSequence& seq) {
  if (seq.num_frames() < 1) throw ValidationError("mean_pool of empty sequence");
  Eigen::VectorXd sum = seq.data.cast<double>().colwise().sum().transpose();
  return (sum / seq.num_frames()).cast<float>();
}

}  // namespace awe::features
