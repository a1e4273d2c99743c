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

#include "awe/text.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "awe/error.hpp"

namespace awe::text {

std::string normalize_label(std::string_view label) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
  if (source.indexOf(static_cast<UChar>(0xFFFD)) >= 0 &&
      label.find("\xEF\xBF\xBD") == std::string_view::npos) {
    throw ValidationError("invalid UTF-8 in label '" + std::string(label) + "'");
  }
  // Lowercasing can denormalize (e.g. U+0130), so normalize on both sides.
  icu::UnicodeString lowered = nfc->normalize(source, status);
  lowered.toLower(icu::Locale::getRoot());
  icu::UnicodeString result = nfc->normalize(lowered, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");

  std::string out;
  result.toUTF8String(out);
  return out;
}

std::u32string letter_key(std::string_view utf8) {
  std::u32string key;
  int32_t i = 0;
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto n = static_cast<int32_t>(utf8.size());
  while (i < n) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) throw Error("invalid UTF-8 in '" + std::string(utf8) + "'");
    key.push_back(static_cast<char32_t>(c));
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace awe::text
