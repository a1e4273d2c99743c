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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "awe/corpus.hpp"
#include "awe/pairs.hpp"

namespace awe::eval {

using VectorMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Labelled embeddings, one row per word instance.
struct EmbeddingSet {
  VectorMatrix vectors;
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::string> speakers;

  int dim() const { return static_cast<int>(vectors.cols()); }
  std::size_t size() const { return ids.size(); }
  std::span<const float> row(std::size_t i) const {
    return {vectors.row(static_cast<Eigen::Index>(i)).data(),
            static_cast<std::size_t>(vectors.cols())};
  }

  // Parallel arrays agree in length, rows finite.
  void validate() const;
  EmbeddingSet subset(std::span<const std::size_t> rows) const;
};

// Rows whose instance id occurs in `m`, in set order.
EmbeddingSet restrict_to(const EmbeddingSet& set, const corpus::Manifest& m);

// 1 - u.v / (|u||v|), accumulated in double. A zero vector yields 1.0 and
// bumps `zero_vector_count` when given.
double cosine_distance(std::span<const float> u, std::span<const float> v,
                       std::uint64_t* zero_vector_count = nullptr);

struct ScoredPair {
  double distance = 0.0;
  bool is_same_word = false;
};

// Exact AP as a rank statistic over ascending distances. Equal distances form
// one block that enters the precision-recall curve as a single threshold
// step, which is exactly the area under the threshold-sweep PR curve.
// Throws NoPositives.
double average_precision(std::span<const ScoredPair> pairs);

// Streaming form of average_precision(): only the two distance lists are
// kept, so memory is 8 bytes per pair.
class ApAccumulator {
 public:
  void add(double distance, bool is_same_word) {
    (is_same_word ? positives_ : negatives_).push_back(distance);
  }
  void merge(ApAccumulator&& other);
  std::uint64_t num_pairs() const {
    return positives_.size() + negatives_.size();
  }
  std::uint64_t num_positive_pairs() const { return positives_.size(); }
  void reserve(std::size_t positives, std::size_t negatives);
  // Sorts in place; throws NoPositives.
  double finish();

 private:
  std::vector<double> positives_;
  std::vector<double> negatives_;
};

struct EvalOptions {
  // Drop same-word pairs spoken by one speaker.
  bool different_speakers_only = false;
  std::size_t block_size = pairs::kDefaultBlockSize;
  unsigned num_threads = 0;  // 0: hardware concurrency
  std::string set_tag = "test";
  std::string language;
};

struct ApReport {
  double ap = 0.0;
  std::uint64_t num_pairs = 0;
  std::uint64_t num_positive_pairs = 0;
  std::string set_tag;
  std::string language;
  std::string notes;
};

// Exact same-different AP over all N(N-1)/2 pairs. Result does not depend on
// block size or thread count. Throws TooFewInstances, NoPositives.
ApReport evaluate(const EmbeddingSet& set, const EvalOptions& opts = {});

// `key: value` lines.
std::string format_report(const ApReport& report);

}  // namespace awe::eval
