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

#include "awe/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "awe/error.hpp"

namespace awe::eval {
namespace {

// Shared by cosine_distance() and evaluate() so both give bit-identical
// distances.
double dot(const float* u, const float* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  }
  return s;
}

double distance_from(double uv, double uu, double vv,
                     std::uint64_t* zero_vector_count) {
  if (uu == 0.0 || vv == 0.0) {
    if (zero_vector_count) ++*zero_vector_count;
    return 1.0;
  }
  return 1.0 - uv / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace

void EmbeddingSet::validate() const {
  const auto n = static_cast<std::size_t>(vectors.rows());
  if (ids.size() != n || labels.size() != n || speakers.size() != n) {
    throw ValidationError("embedding set arrays differ in length");
  }
  if (!vectors.allFinite()) {
    throw ValidationError("embedding set has non-finite values");
  }
}

EmbeddingSet EmbeddingSet::subset(std::span<const std::size_t> rows) const {
  EmbeddingSet out;
  out.vectors.resize(static_cast<Eigen::Index>(rows.size()), vectors.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto r = rows[k];
    out.vectors.row(static_cast<Eigen::Index>(k)) =
        vectors.row(static_cast<Eigen::Index>(r));
    out.ids.push_back(ids[r]);
    out.labels.push_back(labels[r]);
    out.speakers.push_back(speakers[r]);
  }
  return out;
}

EmbeddingSet restrict_to(const EmbeddingSet& set, const corpus::Manifest& m) {
  std::unordered_set<std::string> keep;
  for (const auto& w : m.instances) keep.insert(w.instance_id);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (keep.contains(set.ids[i])) rows.push_back(i);
  }
  return set.subset(rows);
}

double cosine_distance(std::span<const float> u, std::span<const float> v,
                       std::uint64_t* zero_vector_count) {
  if (u.size() != v.size()) {
    throw DimMismatch("cosine_distance of vectors with dims " +
                      std::to_string(u.size()) + " and " +
                      std::to_string(v.size()));
  }
  const std::size_t n = u.size();
  return distance_from(dot(u.data(), v.data(), n), dot(u.data(), u.data(), n),
                       dot(v.data(), v.data(), n), zero_vector_count);
}

void ApAccumulator::merge(ApAccumulator&& other) {
  positives_.insert(positives_.end(), other.positives_.begin(),
                    other.positives_.end());
  negatives_.insert(negatives_.end(), other.negatives_.begin(),
                    other.negatives_.end());
  other.positives_.clear();
  other.negatives_.clear();
}

void ApAccumulator::reserve(std::size_t positives, std::size_t negatives) {
  positives_.reserve(positives);
  negatives_.reserve(negatives);
}

double ApAccumulator::finish() {
  if (positives_.empty()) throw NoPositives("no same-word pairs to rank");
  std::sort(positives_.begin(), positives_.end());
  std::sort(negatives_.begin(), negatives_.end());

  const std::size_t np = positives_.size();
  const std::size_t nn = negatives_.size();
  std::size_t i = 0, j = 0;
  double tp = 0.0, fp = 0.0, area = 0.0;
  while (i < np) {
    double d = positives_[i];
    if (j < nn && negatives_[j] < d) d = negatives_[j];
    std::size_t block_pos = 0;
    while (i < np && positives_[i] == d) {
      ++i;
      ++block_pos;
    }
    while (j < nn && negatives_[j] == d) {
      ++j;
      fp += 1.0;
    }
    if (block_pos > 0) {
      tp += static_cast<double>(block_pos);
      area += static_cast<double>(block_pos) * (tp / (tp + fp));
    }
  }
  return area / static_cast<double>(np);
}

double average_precision(std::span<const ScoredPair> pairs) {
  ApAccumulator acc;
  for (const auto& p : pairs) acc.add(p.distance, p.is_same_word);
  return acc.finish();
}

ApReport evaluate(const EmbeddingSet& set, const EvalOptions& opts) {
  set.validate();
  pairs::EvalPairStream stream(set.labels, opts.block_size);

  const std::size_t n = set.size();
  const auto dim = static_cast<std::size_t>(set.dim());
  std::vector<double> sq_norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const float* r = set.row(i).data();
    sq_norm[i] = dot(r, r, dim);
  }

  unsigned workers = opts.num_threads != 0
                         ? opts.num_threads
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, stream.num_blocks()));

  std::vector<ApAccumulator> partial(workers);
  std::vector<std::uint64_t> zero_counts(workers, 0);
  std::atomic<std::size_t> next_block{0};
  auto work = [&](unsigned w) {
    std::vector<pairs::EvalPair> blk;
    auto& acc = partial[w];
    for (std::size_t b = next_block++; b < stream.num_blocks();
         b = next_block++) {
      stream.block(b, blk);
      for (const auto& p : blk) {
        if (opts.different_speakers_only && p.is_same_word &&
            set.speakers[p.index_a] == set.speakers[p.index_b]) {
          continue;
        }
        const double d = distance_from(
            dot(set.row(p.index_a).data(), set.row(p.index_b).data(), dim),
            sq_norm[p.index_a], sq_norm[p.index_b], &zero_counts[w]);
        acc.add(d, p.is_same_word);
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  ApAccumulator all;
  std::size_t pos = 0, neg = 0;
  for (const auto& p : partial) {
    pos += p.num_positive_pairs();
    neg += p.num_pairs() - p.num_positive_pairs();
  }
  all.reserve(pos, neg);
  std::uint64_t zero_pairs = 0;
  for (unsigned w = 0; w < workers; ++w) {
    all.merge(std::move(partial[w]));
    zero_pairs += zero_counts[w];
  }

  ApReport report;
  report.num_pairs = all.num_pairs();
  report.num_positive_pairs = all.num_positive_pairs();
  report.set_tag = opts.set_tag;
  report.language = opts.language;
  report.ap = all.finish();
  std::ostringstream notes;
  notes << "N=" << n;
  if (opts.different_speakers_only) notes << "; different-speakers-only";
  if (zero_pairs > 0) notes << "; zero_vector_pairs=" << zero_pairs;
  report.notes = notes.str();
  return report;
}

std::string format_report(const ApReport& r) {
  char ap[32];
  std::snprintf(ap, sizeof(ap), "%.6f", r.ap);
  std::ostringstream out;
  out << "ap: " << ap << '\n'
      << "num_pairs: " << r.num_pairs << '\n'
      << "num_positive_pairs: " << r.num_positive_pairs << '\n'
      << "set_tag: " << r.set_tag << '\n'
      << "language: " << r.language << '\n'
      << "notes: " << r.notes << '\n';
  return out.str();
}

}  // namespace awe::eval
