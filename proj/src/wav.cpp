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

#include "awe/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "awe/error.hpp"

namespace awe::wav {
namespace {

template <typename T>
T read_at(const std::vector<char>& b, std::size_t off) {
  T v;
  std::memcpy(&v, b.data() + off, sizeof(T));
  return v;
}

template <typename T>
void write_le(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

Audio read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> b((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 ||
      std::memcmp(b.data() + 8, "WAVE", 4) != 0) {
    throw Error(path.string() + ": not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;
  std::size_t off = 12;
  while (off + 8 <= b.size()) {
    const auto len = read_at<std::uint32_t>(b, off + 4);
    if (std::memcmp(b.data() + off, "fmt ", 4) == 0 && off + 24 <= b.size()) {
      format = read_at<std::uint16_t>(b, off + 8);
      channels = read_at<std::uint16_t>(b, off + 10);
      rate = read_at<std::uint32_t>(b, off + 12);
      bits = read_at<std::uint16_t>(b, off + 22);
    } else if (std::memcmp(b.data() + off, "data", 4) == 0) {
      data_off = off + 8;
      data_len = std::min<std::size_t>(len, b.size() - data_off);
      break;
    }
    off += 8 + len + (len & 1);
  }
  if (channels == 0 || data_off == 0) {
    throw Error(path.string() + ": missing fmt or data chunk");
  }
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    throw Error(path.string() + ": only 16-bit PCM and 32-bit float supported");
  }
  const std::size_t bytes_per = bits / 8;
  const std::size_t frames = data_len / (bytes_per * channels);
  Audio audio;
  audio.sample_rate_hz = static_cast<int>(rate);
  audio.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = data_off + (i * channels + c) * bytes_per;
      acc += pcm16 ? read_at<std::int16_t>(b, at) / 32768.0
                   : read_at<float>(b, at);
    }
    audio.samples[i] = static_cast<float>(acc / channels);
  }
  return audio;
}

void write_wav(const Audio& audio, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const auto data_len = static_cast<std::uint32_t>(audio.samples.size() * 2);
  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, 36 + data_len);
  out.write("WAVEfmt ", 8);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(audio.sample_rate_hz));
  write_le<std::uint32_t>(out,
                          static_cast<std::uint32_t>(audio.sample_rate_hz * 2));
  write_le<std::uint16_t>(out, 2);
  write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  write_le<std::uint32_t>(out, data_len);
  for (float s : audio.samples) {
    const double clamped = std::clamp(static_cast<double>(s), -1.0, 1.0);
    write_le<std::int16_t>(
        out, static_cast<std::int16_t>(std::lround(clamped * 32767.0)));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::span<const float> segment(const Audio& audio, double start_s,
                               double end_s) {
  const auto n = audio.samples.size();
  auto to_index = [&](double s) {
    const double idx = std::round(s * audio.sample_rate_hz);
    return static_cast<std::size_t>(std::clamp<double>(idx, 0.0, n));
  };
  const std::size_t begin = to_index(start_s);
  const std::size_t end = std::max(begin, to_index(end_s));
  return std::span<const float>(audio.samples).subspan(begin, end - begin);
}

}  // namespace awe::wav
