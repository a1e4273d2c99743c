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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace awe::corpus {

enum class Split { kTrain, kDev, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view name);

// One spoken word occurrence inside an utterance.
struct WordInstance {
  std::string instance_id;
  std::string word;  // NFC-normalized, lowercased
  std::string speaker_id;
  std::string utterance_id;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string source;  // audio or feature file

  double duration_s() const { return end_s - start_s; }
};

struct Manifest {
  Split split = Split::kTrain;
  std::string language;
  std::vector<WordInstance> instances;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }
};

struct CorpusStats {
  std::size_t num_instances = 0;
  std::size_t num_unique_words = 0;
  std::size_t num_speakers = 0;
  double total_duration_h = 0.0;
};

struct FilterOptions {
  double min_dur_s = 0.5;
  std::size_t min_freq = 5;
  std::size_t max_freq = 50;

  // Duration cut only; frequency bounds disabled.
  static FilterOptions duration_only(double min_dur_s = 0.5) {
    return {min_dur_s, 0, std::numeric_limits<std::size_t>::max()};
  }
};

inline constexpr std::string_view kManifestHeader =
    "instance_id,word,speaker_id,utterance_id,start_s,end_s,source";

// Parses the line-oriented manifest format. Relative `source` paths are kept
// verbatim; see resolve_source(). Throws ParseError / ValidationError.
Manifest parse_manifest(std::istream& in, Split split = Split::kTrain,
                        std::string language = {});
Manifest load_manifest(const std::filesystem::path& path,
                       Split split = Split::kTrain, std::string language = {});

void write_manifest(const Manifest& m, std::ostream& out);
void save_manifest(const Manifest& m, const std::filesystem::path& path);

// Checks the WordInstance invariants and id uniqueness.
void validate(const Manifest& m);

// Duration cut first, then word-frequency bounds computed on the survivors.
Manifest filter_instances(const Manifest& m, const FilterOptions& opts);

// Instances of `test` whose word never occurs in `train`.
Manifest build_test_prime(const Manifest& train, const Manifest& test);

CorpusStats stats(const Manifest& m);

struct SpeakerOverlap {
  std::string speaker_id;
  Split first;
  Split second;
};

std::vector<SpeakerOverlap> find_speaker_overlaps(
    const std::vector<const Manifest*>& splits);

// Throws ValidationError naming the first speaker shared by two splits.
void check_speaker_disjoint(const Manifest& train, const Manifest& dev,
                            const Manifest& test);

// Seconds with at least three fractional digits, round-trip exact.
std::string format_seconds(double seconds);

// Resolves a manifest `source` against the directory holding the manifest.
std::filesystem::path resolve_source(const std::filesystem::path& manifest_dir,
                                     const std::string& source);

// Rewrites every source as an absolute path, resolved against the directory
// of the manifest file it was read from.
Manifest with_absolute_sources(Manifest m,
                               const std::filesystem::path& manifest_path);

}  // namespace awe::corpus
