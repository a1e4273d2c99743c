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

#include "awe/model/network.hpp"

namespace awe::model {

// "AWEM" | u32 version | config | u32 tensor count | per tensor:
// u32 name length, name bytes, u32 rows, u32 cols, float32 row-major.
// All little-endian.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<char> encode_checkpoint(const AweModel& model);
AweModel decode_checkpoint(const std::vector<char>& bytes);

void save_checkpoint(const AweModel& model, const std::filesystem::path& path);
AweModel load_checkpoint(const std::filesystem::path& path);

}  // namespace awe::model
