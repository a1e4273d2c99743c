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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace awe::testing {

double ap_threshold_sweep(const std::vector<double>& distances,
                          const std::vector<bool>& is_same) {
  // Pairs sorted by distance; each distinct distance is one threshold.
  std::vector<std::pair<double, bool>> sorted;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    sorted.emplace_back(distances[i], is_same[i]);
  }
  std::sort(sorted.begin(), sorted.end());
  double total_pos = 0;
  for (bool s : is_same) total_pos += s ? 1 : 0;
  if (total_pos == 0) throw std::runtime_error("no positives");
  double ap = 0.0;
  double prev_recall = 0.0;
  double tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].second) {
      tp += 1;
    } else {
      fp += 1;
    }
    const bool last_at_threshold =
        i + 1 == sorted.size() || sorted[i + 1].first != sorted[i].first;
    if (!last_at_threshold) continue;
    const double recall = tp / total_pos;
    ap += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
  }
  return ap;
}

double ap_threshold_sweep(const std::vector<std::vector<double>>& vectors,
                          const std::vector<std::string>& labels,
                          const std::vector<std::string>& speakers,
                          bool different_speakers_only) {
  std::vector<double> distances;
  std::vector<bool> is_same;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    for (std::size_t b = a + 1; b < vectors.size(); ++b) {
      const bool same = labels[a] == labels[b];
      if (different_speakers_only && same && speakers[a] == speakers[b]) {
        continue;
      }
      double uv = 0, uu = 0, vv = 0;
      for (std::size_t k = 0; k < vectors[a].size(); ++k) {
        uv += vectors[a][k] * vectors[b][k];
        uu += vectors[a][k] * vectors[a][k];
        vv += vectors[b][k] * vectors[b][k];
      }
      const double d =
          (uu == 0 || vv == 0) ? 1.0 : 1.0 - uv / (std::sqrt(uu) * std::sqrt(vv));
      distances.push_back(d);
      is_same.push_back(same);
    }
  }
  return ap_threshold_sweep(distances, is_same);
}

double loss_double_loop(const std::vector<Sequence>& targets,
                        const std::vector<Sequence>& outputs) {
  double total = 0.0;
  for (std::size_t b = 0; b < targets.size(); ++b) {
    for (std::size_t t = 0; t < targets[b].size(); ++t) {
      for (std::size_t d = 0; d < targets[b][t].size(); ++d) {
        const double diff = targets[b][t][d] - outputs[b][t][d];
        total += diff * diff;
      }
    }
  }
  return total / static_cast<double>(targets.size());
}

namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

std::vector<std::vector<double>> regression_deltas(
    const std::vector<std::vector<double>>& x, int window) {
  const int n = static_cast<int>(x.size());
  double denom = 0;
  for (int k = 1; k <= window; ++k) denom += 2.0 * k * k;
  std::vector<std::vector<double>> out(n, std::vector<double>(x[0].size()));
  for (int t = 0; t < n; ++t) {
    for (std::size_t d = 0; d < x[0].size(); ++d) {
      double num = 0;
      for (int k = 1; k <= window; ++k) {
        const int ahead = std::min(n - 1, t + k);
        const int behind = std::max(0, t - k);
        num += k * (x[ahead][d] - x[behind][d]);
      }
      out[t][d] = num / denom;
    }
  }
  return out;
}

}  // namespace

int expected_frames(std::size_t num_samples, const MfccReferenceConfig& cfg) {
  const long window = std::lround(cfg.sample_rate_hz * cfg.window_ms / 1000.0);
  const long shift = std::lround(cfg.sample_rate_hz * cfg.shift_ms / 1000.0);
  const long n = static_cast<long>(num_samples);
  if (n < window) return 0;
  return static_cast<int>((n - window) / shift + 1);
}

std::vector<std::vector<double>> mfcc_reference(
    const std::vector<float>& samples, const MfccReferenceConfig& cfg) {
  const int window =
      static_cast<int>(std::lround(cfg.sample_rate_hz * cfg.window_ms / 1000.0));
  const int shift =
      static_cast<int>(std::lround(cfg.sample_rate_hz * cfg.shift_ms / 1000.0));
  int nfft = 1;
  while (nfft < window) nfft *= 2;
  const int bins = nfft / 2 + 1;
  const int frames = expected_frames(samples.size(), cfg);

  std::vector<double> emphasized(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    emphasized[i] = samples[i] - (i > 0 ? cfg.pre_emphasis * samples[i - 1] : 0.0);
  }

  // Filter edges equally spaced in mel between 0 and Nyquist; weights are
  // triangles in the mel domain.
  const double mel_top = hz_to_mel(cfg.sample_rate_hz / 2.0);
  std::vector<double> edges(cfg.num_filters + 2);
  for (int j = 0; j < cfg.num_filters + 2; ++j) {
    edges[j] = mel_top * j / (cfg.num_filters + 1);
  }
  std::vector<std::vector<double>> filters(cfg.num_filters,
                                           std::vector<double>(bins, 0.0));
  for (int j = 0; j < cfg.num_filters; ++j) {
    const double left = edges[j], center = edges[j + 1], right = edges[j + 2];
    for (int k = 0; k < bins; ++k) {
      const double mel = hz_to_mel(static_cast<double>(k) * cfg.sample_rate_hz / nfft);
      if (mel > left && mel <= center) {
        filters[j][k] = (mel - left) / (center - left);
      } else if (mel > center && mel < right) {
        filters[j][k] = (right - mel) / (right - center);
      }
    }
  }

  const double pi = std::numbers::pi;
  std::vector<std::vector<double>> statics(frames,
                                           std::vector<double>(cfg.num_ceps));
  for (int f = 0; f < frames; ++f) {
    std::vector<double> frame(nfft, 0.0);
    for (int i = 0; i < window; ++i) {
      const double hamming = 0.54 - 0.46 * std::cos(2 * pi * i / (window - 1));
      frame[i] = emphasized[static_cast<std::size_t>(f) * shift + i] * hamming;
    }
    std::vector<double> power(bins);
    for (int k = 0; k < bins; ++k) {
      double re = 0, im = 0;
      for (int n = 0; n < nfft; ++n) {
        const double angle = 2 * pi * static_cast<double>(k) * n / nfft;
        re += frame[n] * std::cos(angle);
        im -= frame[n] * std::sin(angle);
      }
      power[k] = re * re + im * im;
    }
    std::vector<double> log_energy(cfg.num_filters);
    for (int j = 0; j < cfg.num_filters; ++j) {
      double e = 0;
      for (int k = 0; k < bins; ++k) e += filters[j][k] * power[k];
      log_energy[j] = std::log(std::max(e, cfg.log_floor));
    }
    const int m = cfg.num_filters;
    for (int c = 0; c < cfg.num_ceps; ++c) {
      double s = 0;
      for (int j = 0; j < m; ++j) {
        s += log_energy[j] * std::cos(pi * c * (j + 0.5) / m);
      }
      statics[f][c] = s * (c == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m));
    }
  }
  if (frames == 0) return {};
  const auto d1 = regression_deltas(statics, cfg.delta_window);
  const auto d2 = regression_deltas(d1, cfg.delta_window);
  std::vector<std::vector<double>> out(frames);
  for (int f = 0; f < frames; ++f) {
    out[f] = statics[f];
    out[f].insert(out[f].end(), d1[f].begin(), d1[f].end());
    out[f].insert(out[f].end(), d2[f].begin(), d2[f].end());
  }
  return out;
}

}  // namespace awe::testing
