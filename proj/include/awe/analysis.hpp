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

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awe/eval.hpp"

namespace awe::analysis {

using WordPair = std::pair<std::string, std::string>;

// Unordered pairs of distinct words with identical letter multisets, each
// pair as (lexicographically smaller, larger), sorted.
std::vector<WordPair> find_anagram_pairs(std::span<const std::string> vocab);

enum class RowKind { kSameWord, kAnagramPair };
std::string_view to_string(RowKind kind);

struct AnagramRow {
  std::string word1;
  std::string word2;
  double distance = 0.0;
  RowKind description = RowKind::kSameWord;
};

enum class SpeakerPolicy { kDifferentSpeakers };

// For each pair (w1, w2): a same-word row for w1 (first time w1 is seen as
// word1), then the anagram row. Instances are chosen deterministically: the
// lowest instance id of the first word, and the lowest id of the second word
// from a different speaker. Throws InsufficientInstances.
std::vector<AnagramRow> anagram_report(
    const eval::EmbeddingSet& set, std::span<const WordPair> pairs,
    SpeakerPolicy policy = SpeakerPolicy::kDifferentSpeakers);

// `word1,word2,distance,description` with a header.
void write_anagram_report(std::span<const AnagramRow> rows, std::ostream& out);

// Words ordered by descending frequency, ties lexicographic.
std::vector<std::string> top_words(const eval::EmbeddingSet& set,
                                   std::size_t k);

// Rows for every instance of the k most frequent words (set order), header
// `instance_id,word,v0..v{dim-1}`.
void export_labeled_embeddings(const eval::EmbeddingSet& set, std::size_t k,
                               std::ostream& out);

}  // namespace awe::analysis
