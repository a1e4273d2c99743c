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

#include "awe/pairs.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <unordered_map>

#include "awe/error.hpp"
#include "awe/random.hpp"

namespace awe::pairs {

std::vector<TrainPair> make_cae_pairs(const corpus::Manifest& m,
                                      std::uint64_t seed) {
  // Group by word in first-appearance order so the pre-shuffle order is a
  // function of the manifest alone.
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> group_of;
  for (std::size_t i = 0; i < m.instances.size(); ++i) {
    auto [it, inserted] =
        group_of.emplace(m.instances[i].word, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  std::vector<TrainPair> out;
  for (const auto& g : groups) {
    for (std::size_t a : g) {
      for (std::size_t b : g) {
        if (a == b) continue;
        const auto& x = m.instances[a];
        const auto& y = m.instances[b];
        out.push_back({x.instance_id, y.instance_id, x.word});
      }
    }
  }
  Rng rng(seed);
  shuffle(std::span<TrainPair>(out), rng);
  return out;
}

std::vector<TrainPair> make_ae_pairs(const corpus::Manifest& m) {
  std::vector<TrainPair> out;
  out.reserve(m.instances.size());
  for (const auto& w : m.instances) {
    out.push_back({w.instance_id, w.instance_id, w.word});
  }
  return out;
}

std::pair<std::uint32_t, std::uint32_t> pair_at(std::uint64_t k,
                                                std::uint64_t n) {
  // Row a owns (n - 1 - a) pairs; pairs before row a: a*n - a*(a+1)/2.
  auto before = [n](std::uint64_t a) { return a * n - a * (a + 1) / 2; };
  const double nd = static_cast<double>(n);
  double guess = std::floor(
      (2.0 * nd - 1.0 -
       std::sqrt((2.0 * nd - 1.0) * (2.0 * nd - 1.0) - 8.0 * double(k))) /
      2.0);
  std::uint64_t a = guess < 0 ? 0 : static_cast<std::uint64_t>(guess);
  while (a > 0 && before(a) > k) --a;
  while (a + 1 < n && before(a + 1) <= k) ++a;
  const std::uint64_t b = a + 1 + (k - before(a));
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
}

EvalPairStream::EvalPairStream(std::span<const std::string> labels,
                               std::size_t block_size)
    : block_size_(block_size) {
  if (block_size == 0) throw ValidationError("block size must be positive");
  if (labels.size() < 2) {
    throw TooFewInstances("same-different evaluation needs N >= 2, got " +
                          std::to_string(labels.size()));
  }
  if (labels.size() > UINT32_MAX) throw ValidationError("too many instances");
  std::unordered_map<std::string, std::uint32_t> ids;
  label_ids_.reserve(labels.size());
  for (const auto& l : labels) {
    auto [it, inserted] =
        ids.emplace(l, static_cast<std::uint32_t>(ids.size()));
    label_ids_.push_back(it->second);
  }
  const std::uint64_t n = labels.size();
  total_ = n * (n - 1) / 2;
}

namespace {
std::vector<std::string> words_of(const corpus::Manifest& m) {
  std::vector<std::string> w;
  w.reserve(m.instances.size());
  for (const auto& i : m.instances) w.push_back(i.word);
  return w;
}
}  // namespace

EvalPairStream::EvalPairStream(const corpus::Manifest& m,
                               std::size_t block_size)
    : EvalPairStream(words_of(m), block_size) {}

std::size_t EvalPairStream::num_blocks() const {
  return static_cast<std::size_t>((total_ + block_size_ - 1) / block_size_);
}

void EvalPairStream::block(std::size_t block_index,
                           std::vector<EvalPair>& out) const {
  out.clear();
  const std::uint64_t begin = std::uint64_t{block_index} * block_size_;
  if (begin >= total_) return;
  const std::uint64_t end = std::min<std::uint64_t>(total_, begin + block_size_);
  out.reserve(static_cast<std::size_t>(end - begin));
  const std::uint64_t n = label_ids_.size();
  auto [a, b] = pair_at(begin, n);
  for (std::uint64_t k = begin; k < end; ++k) {
    out.push_back({a, b, label_ids_[a] == label_ids_[b]});
    if (++b == n) {
      ++a;
      b = a + 1;
    }
  }
}

bool EvalPairStream::next(std::vector<EvalPair>& out) {
  if (cursor_ >= num_blocks()) {
    out.clear();
    return false;
  }
  block(cursor_++, out);
  return true;
}

void write_pairs(std::span<const TrainPair> pairs, std::ostream& out) {
  for (const auto& p : pairs) out << p.input_id << '\t' << p.target_id << '\n';
}

void write_eval_pairs(const corpus::Manifest& m, std::ostream& out,
                      std::size_t block_size) {
  EvalPairStream stream(m, block_size);
  std::vector<EvalPair> blk;
  while (stream.next(blk)) {
    for (const auto& p : blk) {
      out << m.instances[p.index_a].instance_id << '\t'
          << m.instances[p.index_b].instance_id << '\t'
          << (p.is_same_word ? 1 : 0) << '\n';
    }
  }
}

}  // namespace awe::pairs
