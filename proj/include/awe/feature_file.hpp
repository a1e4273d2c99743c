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
#include <unordered_map>
#include <vector>

#include "awe/corpus.hpp"
#include "awe/features.hpp"

namespace awe::features {

// Binary AWEF layout, little-endian:
//   "AWEF" | u16 version | u16 frame_shift_ms | u32 dim | u32 num_frames |
//   u8 source_kind | 7 reserved | num_frames*dim float32, row-major.
inline constexpr std::uint16_t kFeatureFileVersion = 1;
inline constexpr std::size_t kFeatureHeaderBytes = 24;

std::vector<char> encode_feature_file(const FeatureSequence& seq);
FeatureSequence decode_feature_file(const std::vector<char>& bytes);

void write_feature_file(const FeatureSequence& seq,
                        const std::filesystem::path& path);
FeatureSequence read_feature_file(const std::filesystem::path& path);

// `<dir>/<instance_id>.awef`; rejects ids that are not plain file names.
std::filesystem::path feature_path(const std::filesystem::path& dir,
                                   const std::string& instance_id);

// Instance id -> feature sequence.
class FeatureStore {
 public:
  FeatureStore() = default;

  void put(std::string instance_id, FeatureSequence seq);
  bool contains(const std::string& instance_id) const;
  // Throws MissingFeature.
  const FeatureSequence& get(const std::string& instance_id) const;
  std::size_t size() const { return items_.size(); }

  // Loads `<dir>/<id>.awef` for every instance of every manifest.
  static FeatureStore load_dir(const std::filesystem::path& dir,
                               const std::vector<const corpus::Manifest*>& ms);

 private:
  std::unordered_map<std::string, FeatureSequence> items_;
};

}  // namespace awe::features
