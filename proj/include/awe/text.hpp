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

#include <string>
#include <string_view>

namespace awe::text {

// NFC-normalizes and lowercases a UTF-8 word label. Throws awe::Error on
// invalid UTF-8.
std::string normalize_label(std::string_view label);

// Code points of a UTF-8 string, sorted; two words are anagrams iff their
// keys match.
std::u32string letter_key(std::string_view utf8);

}  // namespace awe::text
