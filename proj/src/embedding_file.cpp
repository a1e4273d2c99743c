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

#include "awe/embedding_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "awe/error.hpp"

namespace awe::eval {
namespace {

static_assert(std::endian::native == std::endian::little);

template <typename T>
void put(std::vector<char>& out, T v) {
  const char* p = reinterpret_cast<const char*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

void put_string(std::vector<char>& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

struct Cursor {
  const std::vector<char>& b;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (b.size() - pos < n) throw TruncatedFile("embedding file truncated");
  }
  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, b.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  std::string get_string() {
    const auto len = get<std::uint32_t>();
    need(len);
    std::string s(b.data() + pos, len);
    pos += len;
    return s;
  }
};

}  // namespace

std::vector<char> encode_embeddings(const EmbeddingSet& set) {
  set.validate();
  std::vector<char> out = {'A', 'W', 'E', 'E'};
  put<std::uint16_t>(out, kEmbeddingFileVersion);
  put<std::uint16_t>(out, 0);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(set.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(set.size()));
  for (std::size_t i = 0; i < set.size(); ++i) {
    put_string(out, set.ids[i]);
    put_string(out, set.labels[i]);
    put_string(out, set.speakers[i]);
    for (float v : set.row(i)) put<float>(out, v);
  }
  return out;
}

EmbeddingSet decode_embeddings(const std::vector<char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "AWEE", 4) != 0) {
    throw BadMagic("not an AWEE embedding file");
  }
  Cursor in{bytes, 4};
  const auto version = in.get<std::uint16_t>();
  if (version != kEmbeddingFileVersion) {
    throw VersionMismatch("AWEE version " + std::to_string(version));
  }
  in.get<std::uint16_t>();
  const auto dim = in.get<std::uint32_t>();
  const auto n = in.get<std::uint32_t>();
  EmbeddingSet set;
  set.vectors.resize(n, dim);
  for (std::uint32_t i = 0; i < n; ++i) {
    set.ids.push_back(in.get_string());
    set.labels.push_back(in.get_string());
    set.speakers.push_back(in.get_string());
    for (std::uint32_t d = 0; d < dim; ++d) set.vectors(i, d) = in.get<float>();
  }
  set.validate();
  return set;
}

void write_embeddings(const EmbeddingSet& set,
                      const std::filesystem::path& path) {
  auto bytes = encode_embeddings(set);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return decode_embeddings(bytes);
}

}  // namespace awe::eval
