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

#include "awe/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "awe/error.hpp"
#include "awe/text.hpp"

namespace awe::analysis {

std::vector<WordPair> find_anagram_pairs(std::span<const std::string> vocab) {
  std::set<std::string> unique(vocab.begin(), vocab.end());
  std::map<std::u32string, std::vector<std::string>> groups;
  for (const auto& w : unique) groups[text::letter_key(w)].push_back(w);

  std::vector<WordPair> out;
  for (const auto& [key, words] : groups) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        out.emplace_back(words[i], words[j]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(RowKind kind) {
  return kind == RowKind::kSameWord ? "Same word" : "Anagram pair";
}

namespace {

// Rows of each word sorted by instance id.
std::unordered_map<std::string, std::vector<std::size_t>> rows_by_word(
    const eval::EmbeddingSet& set) {
  std::unordered_map<std::string, std::vector<std::size_t>> by_word;
  for (std::size_t i = 0; i < set.size(); ++i) by_word[set.labels[i]].push_back(i);
  for (auto& [w, rows] : by_word) {
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return set.ids[a] < set.ids[b];
    });
  }
  return by_word;
}

const std::vector<std::size_t>& rows_of(
    const std::unordered_map<std::string, std::vector<std::size_t>>& by_word,
    const std::string& word) {
  auto it = by_word.find(word);
  if (it == by_word.end()) throw InsufficientInstances(word);
  return it->second;
}

std::size_t other_speaker(const eval::EmbeddingSet& set,
                          const std::vector<std::size_t>& rows,
                          const std::string& speaker, const std::string& word) {
  for (std::size_t r : rows) {
    if (set.speakers[r] != speaker) return r;
  }
  throw InsufficientInstances(word);
}

}  // namespace

std::vector<AnagramRow> anagram_report(const eval::EmbeddingSet& set,
                                       std::span<const WordPair> pairs,
                                       SpeakerPolicy policy) {
  (void)policy;  // different speakers is the only policy
  set.validate();
  const auto by_word = rows_by_word(set);
  std::vector<AnagramRow> rows;
  std::unordered_set<std::string> done;
  for (const auto& [w1, w2] : pairs) {
    const auto& r1 = rows_of(by_word, w1);
    const std::size_t a = r1.front();
    if (done.insert(w1).second) {
      const std::size_t b = other_speaker(set, r1, set.speakers[a], w1);
      rows.push_back({w1, w1, eval::cosine_distance(set.row(a), set.row(b)),
                      RowKind::kSameWord});
    }
    const std::size_t c =
        other_speaker(set, rows_of(by_word, w2), set.speakers[a], w2);
    rows.push_back({w1, w2, eval::cosine_distance(set.row(a), set.row(c)),
                    RowKind::kAnagramPair});
  }
  return rows;
}

void write_anagram_report(std::span<const AnagramRow> rows, std::ostream& out) {
  out << "word1,word2,distance,description\n";
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.4f", r.distance);
    out << r.word1 << ',' << r.word2 << ',' << buf << ','
        << to_string(r.description) << '\n';
  }
}

std::vector<std::string> top_words(const eval::EmbeddingSet& set,
                                   std::size_t k) {
  std::map<std::string, std::size_t> freq;
  for (const auto& l : set.labels) ++freq[l];
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(),
                                                          freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
    out.push_back(ranked[i].first);
  }
  return out;
}

void export_labeled_embeddings(const eval::EmbeddingSet& set, std::size_t k,
                               std::ostream& out) {
  if (k < 1) throw ValidationError("top_k must be >= 1");
  const auto words = top_words(set, k);
  const std::unordered_set<std::string> keep(words.begin(), words.end());
  out << "instance_id,word";
  for (int d = 0; d < set.dim(); ++d) out << ",v" << d;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!keep.contains(set.labels[i])) continue;
    out << set.ids[i] << ',' << set.labels[i];
    for (float v : set.row(i)) {
      std::snprintf(buf, sizeof(buf), "%.9g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace awe::analysis
