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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "awe/corpus.hpp"

namespace awe::pairs {

// (X, X') training pair; input and target carry the same word.
struct TrainPair {
  std::string input_id;
  std::string target_id;
  std::string word;

  bool operator==(const TrainPair&) const = default;
};

// All ordered pairs of distinct same-word instances, shuffled by `seed`.
std::vector<TrainPair> make_cae_pairs(const corpus::Manifest& m,
                                      std::uint64_t seed);

// One (X, X) pair per instance, manifest order.
std::vector<TrainPair> make_ae_pairs(const corpus::Manifest& m);

// Indices into the labelled collection; index_a < index_b.
struct EvalPair {
  std::uint32_t index_a = 0;
  std::uint32_t index_b = 0;
  bool is_same_word = false;
};

inline constexpr std::size_t kDefaultBlockSize = std::size_t{1} << 20;

// Streams the N(N-1)/2 unordered pairs in row-major (a, b) order, in blocks
// of at most `block_size` pairs. Block k always holds pairs
// [k*block_size, (k+1)*block_size) of that order.
class EvalPairStream {
 public:
  EvalPairStream(std::span<const std::string> labels,
                 std::size_t block_size = kDefaultBlockSize);
  explicit EvalPairStream(const corpus::Manifest& m,
                          std::size_t block_size = kDefaultBlockSize);

  std::uint64_t total_pairs() const { return total_; }
  std::size_t num_blocks() const;
  std::size_t block_size() const { return block_size_; }

  // Fills `out` with block `block_index`; thread-safe for distinct outputs.
  void block(std::size_t block_index, std::vector<EvalPair>& out) const;

  // Sequential iteration; returns false when exhausted.
  bool next(std::vector<EvalPair>& out);

  // Label class of row i (equal ids <=> equal labels).
  std::uint32_t label_id(std::size_t i) const { return label_ids_[i]; }

 private:
  std::vector<std::uint32_t> label_ids_;
  std::uint64_t total_ = 0;
  std::size_t block_size_;
  std::size_t cursor_ = 0;
};

// (a, b) for the k-th pair in row-major order over n items.
std::pair<std::uint32_t, std::uint32_t> pair_at(std::uint64_t k,
                                                std::uint64_t n);

// `input_id\ttarget_id` per line.
void write_pairs(std::span<const TrainPair> pairs, std::ostream& out);
// `id_a\tid_b\t{0,1}` per line, streamed.
void write_eval_pairs(const corpus::Manifest& m, std::ostream& out,
                      std::size_t block_size = kDefaultBlockSize);

}  // namespace awe::pairs
