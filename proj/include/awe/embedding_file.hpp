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
#include <vector>

#include "awe/eval.hpp"

namespace awe::eval {

// "AWEE" | u16 version | u16 reserved | u32 dim | u32 N | N rows of
// (u32-length-prefixed UTF-8 id, word, speaker; dim float32). Little-endian.
inline constexpr std::uint16_t kEmbeddingFileVersion = 1;

std::vector<char> encode_embeddings(const EmbeddingSet& set);
EmbeddingSet decode_embeddings(const std::vector<char>& bytes);

void write_embeddings(const EmbeddingSet& set,
                      const std::filesystem::path& path);
EmbeddingSet read_embeddings(const std::filesystem::path& path);

}  // namespace awe::eval
