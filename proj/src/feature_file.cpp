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

#include "awe/feature_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "awe/error.hpp"

namespace awe::features {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");
static_assert(sizeof(float) == 4);

template <typename T>
void put_le(std::vector<char>& out, T value) {
  const char* p = reinterpret_cast<const char*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get_le(const std::vector<char>& in, std::size_t offset) {
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::vector<char> encode_feature_file(const FeatureSequence& seq) {
  validate(seq);
  std::vector<char> out;
  out.reserve(kFeatureHeaderBytes + seq.data.size() * sizeof(float));
  out.insert(out.end(), {'A', 'W', 'E', 'F'});
  put_le<std::uint16_t>(out, kFeatureFileVersion);
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(seq.frame_shift_ms));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.num_frames()));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(seq.source_kind));
  out.insert(out.end(), 7, '\0');
  const char* data = reinterpret_cast<const char*>(seq.data.data());
  out.insert(out.end(), data, data + seq.data.size() * sizeof(float));
  return out;
}

FeatureSequence decode_feature_file(const std::vector<char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "AWEF", 4) != 0) {
    throw BadMagic("not an AWEF feature file");
  }
  if (bytes.size() < kFeatureHeaderBytes) {
    throw TruncatedFile("AWEF header truncated");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kFeatureFileVersion) {
    throw VersionMismatch("AWEF version " + std::to_string(version) +
                          ", expected " + std::to_string(kFeatureFileVersion));
  }
  FeatureSequence seq;
  seq.frame_shift_ms = get_le<std::uint16_t>(bytes, 6);
  const auto dim = get_le<std::uint32_t>(bytes, 8);
  const auto frames = get_le<std::uint32_t>(bytes, 12);
  const auto kind = get_le<std::uint8_t>(bytes, 16);
  if (kind > 1) throw ValidationError("unknown AWEF source kind");
  seq.source_kind = static_cast<SourceKind>(kind);

  const std::uint64_t payload = std::uint64_t{dim} * frames * sizeof(float);
  if (bytes.size() - kFeatureHeaderBytes < payload) {
    throw TruncatedFile("AWEF payload truncated: have " +
                        std::to_string(bytes.size() - kFeatureHeaderBytes) +
                        " bytes, need " + std::to_string(payload));
  }
  seq.data.resize(frames, dim);
  std::memcpy(seq.data.data(), bytes.data() + kFeatureHeaderBytes, payload);
  validate(seq);
  return seq;
}

void write_feature_file(const FeatureSequence& seq,
                        const std::filesystem::path& path) {
  auto bytes = encode_feature_file(seq);
  // Write-once: temp file then rename so readers never see partial files.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

FeatureSequence read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature file " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return decode_feature_file(bytes);
  } catch (const TruncatedFile& e) {
    throw TruncatedFile(path.string() + ": " + e.what());
  }
}

std::filesystem::path feature_path(const std::filesystem::path& dir,
                                   const std::string& instance_id) {
  if (instance_id.empty() || instance_id == "." || instance_id == ".." ||
      instance_id.find_first_of("/\\") != std::string::npos) {
    throw ValidationError("instance id '" + instance_id +
                          "' is not usable as a file name");
  }
  return dir / (instance_id + ".awef");
}

void FeatureStore::put(std::string instance_id, FeatureSequence seq) {
  items_.insert_or_assign(std::move(instance_id), std::move(seq));
}

bool FeatureStore::contains(const std::string& instance_id) const {
  return items_.contains(instance_id);
}

const FeatureSequence& FeatureStore::get(const std::string& instance_id) const {
  auto it = items_.find(instance_id);
  if (it == items_.end()) throw MissingFeature(instance_id);
  return it->second;
}

FeatureStore FeatureStore::load_dir(
    const std::filesystem::path& dir,
    const std::vector<const corpus::Manifest*>& ms) {
  FeatureStore store;
  for (const corpus::Manifest* m : ms) {
    for (const auto& w : m->instances) {
      if (store.contains(w.instance_id)) continue;
      auto path = feature_path(dir, w.instance_id);
      if (!std::filesystem::exists(path)) throw MissingFeature(w.instance_id);
      store.put(w.instance_id, read_feature_file(path));
    }
  }
  return store;
}

}  // namespace awe::features
