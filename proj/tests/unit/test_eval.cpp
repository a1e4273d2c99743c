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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "awe/embedding_file.hpp"
#include "awe/error.hpp"
#include "awe/eval.hpp"
#include "awe/random.hpp"
#include "oracles.hpp"

namespace awe::eval {
namespace {

EmbeddingSet make_set(const std::vector<std::vector<float>>& rows,
                      const std::vector<std::string>& labels,
                      std::vector<std::string> speakers = {}) {
  EmbeddingSet s;
  s.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t d = 0; d < rows[i].size(); ++d) {
      s.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          rows[i][d];
    }
    s.ids.push_back("i" + std::to_string(i));
  }
  s.labels = labels;
  s.speakers = speakers.empty() ? std::vector<std::string>(rows.size(), "s")
                                : std::move(speakers);
  return s;
}

EmbeddingSet random_set(Rng& rng, std::size_t n, int dim, int words) {
  std::vector<std::vector<float>> rows(n, std::vector<float>(dim));
  std::vector<std::string> labels, speakers;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : rows[i]) v = static_cast<float>(normal(rng));
    labels.push_back("w" + std::to_string(uniform_index(rng, words)));
    speakers.push_back("s" + std::to_string(uniform_index(rng, 3)));
  }
  return make_set(rows, labels, speakers);
}

std::vector<std::vector<double>> rows_of(const EmbeddingSet& set) {
  std::vector<std::vector<double>> rows(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (float v : set.row(i)) rows[i].push_back(v);
  }
  return rows;
}

TEST(Cosine, Landmarks) {
  const std::vector<float> u = {1, 2, 3}, neg = {-1, -2, -3}, o = {2, -1, 0};
  EXPECT_NEAR(cosine_distance(u, u), 0.0, 1e-15);
  EXPECT_NEAR(cosine_distance(u, neg), 2.0, 1e-15);
  EXPECT_NEAR(cosine_distance(u, o), 1.0, 1e-15);
  const std::vector<float> zero = {0, 0, 0};
  std::uint64_t zeros = 0;
  EXPECT_EQ(cosine_distance(u, zero, &zeros), 1.0);
  EXPECT_EQ(zeros, 1u);
  const std::vector<float> short_v = {1, 2};
  EXPECT_THROW(cosine_distance(u, short_v), DimMismatch);
}

TEST(AveragePrecision, Landmarks) {
  std::vector<ScoredPair> separated = {{0.1, true}, {0.2, true}, {0.3, false}};
  EXPECT_DOUBLE_EQ(average_precision(separated), 1.0);

  std::vector<ScoredPair> mixed = {
      {0.1, true}, {0.2, false}, {0.3, true}, {0.4, false}};
  EXPECT_NEAR(average_precision(mixed), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);

  std::vector<ScoredPair> all_pos = {{0.5, true}, {0.1, true}};
  EXPECT_DOUBLE_EQ(average_precision(all_pos), 1.0);

  std::vector<ScoredPair> none = {{0.5, false}};
  EXPECT_THROW(average_precision(none), NoPositives);
}

TEST(AveragePrecision, TiesFormOneThresholdStep) {
  // One positive tied with one negative: a single step at precision 1/2.
  std::vector<ScoredPair> tie = {{0.3, true}, {0.3, false}};
  EXPECT_DOUBLE_EQ(average_precision(tie), 0.5);
  const std::vector<double> d = {0.3, 0.3, 0.1, 0.3};
  const std::vector<bool> same = {true, false, true, true};
  std::vector<ScoredPair> pairs;
  for (std::size_t i = 0; i < d.size(); ++i) pairs.push_back({d[i], same[i]});
  EXPECT_NEAR(average_precision(pairs), testing::ap_threshold_sweep(d, same),
              1e-15);
}

TEST(AveragePrecision, InvariantUnderMonotoneTransform) {
  Rng rng(1);
  std::vector<ScoredPair> pairs;
  for (int i = 0; i < 500; ++i) {
    pairs.push_back({uniform01(rng), uniform01(rng) < 0.2});
  }
  const double ap = average_precision(pairs);
  for (auto& p : pairs) p.distance = std::exp(3 * p.distance) - 7;
  EXPECT_DOUBLE_EQ(average_precision(pairs), ap);
}

TEST(Evaluate, IdenticalSameWordVectors) {
  const auto set = make_set({{1, 0}, {1, 0}, {0, 1}}, {"a", "a", "b"});
  const auto r = evaluate(set);
  EXPECT_DOUBLE_EQ(r.ap, 1.0);
  EXPECT_EQ(r.num_pairs, 3u);
  EXPECT_EQ(r.num_positive_pairs, 1u);
}

TEST(Evaluate, MatchesOracleAcrossBlockSizesAndThreads) {
  Rng rng(2);
  const auto set = random_set(rng, 200, 16, 25);
  const double oracle = testing::ap_threshold_sweep(rows_of(set), set.labels);
  for (std::size_t bs : {std::size_t{1}, std::size_t{64}, std::size_t{1} << 20}) {
    for (unsigned threads : {1u, 3u}) {
      EvalOptions opts;
      opts.block_size = bs;
      opts.num_threads = threads;
      const auto r = evaluate(set, opts);
      EXPECT_NEAR(r.ap, oracle, 1e-9) << "block " << bs << " threads " << threads;
      EXPECT_EQ(r.num_pairs, 200u * 199 / 2);
    }
  }
}

TEST(Evaluate, InvariantToScaleAndRowOrder) {
  Rng rng(3);
  const auto set = random_set(rng, 120, 8, 10);
  const double ap = evaluate(set).ap;
  auto scaled = set;
  for (Eigen::Index i = 0; i < scaled.vectors.rows(); ++i) {
    scaled.vectors.row(i) *= static_cast<float>(1 << (i % 4));
  }
  EXPECT_NEAR(evaluate(scaled).ap, ap, 1e-12);
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  EXPECT_DOUBLE_EQ(evaluate(set.subset(order)).ap, ap);
}

TEST(Evaluate, DifferentSpeakersOnlyDropsSameSpeakerPositives) {
  Rng rng(4);
  const auto set = random_set(rng, 80, 6, 6);
  EvalOptions opts;
  opts.different_speakers_only = true;
  const auto r = evaluate(set, opts);
  const auto all = evaluate(set);
  std::uint64_t dropped = 0;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      dropped += set.labels[a] == set.labels[b] && set.speakers[a] == set.speakers[b];
    }
  }
  EXPECT_EQ(r.num_pairs, all.num_pairs - dropped);
  EXPECT_NEAR(r.ap,
              testing::ap_threshold_sweep(rows_of(set), set.labels, set.speakers,
                                          true),
              1e-9);
  EXPECT_NE(r.notes.find("different-speakers-only"), std::string::npos);
}

TEST(Evaluate, ZeroVectorsAreCounted) {
  const auto set = make_set({{0, 0}, {1, 0}, {1, 0}}, {"a", "a", "b"});
  const auto r = evaluate(set);
  EXPECT_NE(r.notes.find("zero_vector_pairs=2"), std::string::npos);
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(evaluate(make_set({{1, 0}}, {"a"})), TooFewInstances);
  EXPECT_THROW(evaluate(make_set({{1, 0}, {0, 1}}, {"a", "b"})), NoPositives);
}

TEST(Evaluate, ReportFormat) {
  ApReport r;
  r.ap = 0.5;
  r.num_pairs = 10;
  r.num_positive_pairs = 2;
  r.set_tag = "test";
  r.language = "pl";
  const auto text = format_report(r);
  EXPECT_NE(text.find("ap: 0.500000"), std::string::npos);
  EXPECT_NE(text.find("num_pairs: 10"), std::string::npos);
  EXPECT_NE(text.find("language: pl"), std::string::npos);
}

TEST(Evaluate, RestrictToKeepsManifestRows) {
  const auto set = make_set({{1, 0}, {0, 1}, {1, 1}}, {"a", "b", "c"});
  corpus::Manifest m;
  corpus::WordInstance w;
  w.instance_id = "i2";
  m.instances.push_back(w);
  w.instance_id = "i0";
  m.instances.push_back(w);
  const auto sub = restrict_to(set, m);
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.ids[0], "i0");
  EXPECT_EQ(sub.ids[1], "i2");
}

TEST(EmbeddingFile, RoundTrip) {
  Rng rng(5);
  auto set = random_set(rng, 12, 5, 3);
  set.labels[0] = "\xC5\x82\xC3\xB3" "d\xC5\xBA";
  const auto path = std::filesystem::temp_directory_path() / "awe-unit-emb.awee";
  write_embeddings(set, path);
  const auto back = read_embeddings(path);
  EXPECT_EQ(back.ids, set.ids);
  EXPECT_EQ(back.labels, set.labels);
  EXPECT_EQ(back.speakers, set.speakers);
  EXPECT_TRUE((back.vectors.array() == set.vectors.array()).all());
  std::filesystem::remove(path);

  auto bytes = encode_embeddings(set);
  bytes[0] = 'Z';
  EXPECT_THROW(decode_embeddings(bytes), BadMagic);
  bytes = encode_embeddings(set);
  bytes.resize(bytes.size() - 3);
  EXPECT_THROW(decode_embeddings(bytes), TruncatedFile);
}

}  // namespace
}  // namespace awe::eval
