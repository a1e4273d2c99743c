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
#include <vector>

#include "awe/corpus.hpp"
#include "awe/eval.hpp"
#include "awe/feature_file.hpp"
#include "awe/model/network.hpp"

namespace awe::eval {

struct LanguageTarget {
  std::string language;
  corpus::Manifest test;
  corpus::Manifest test_prime;  // may be empty: row skipped
  const features::FeatureStore* features = nullptr;
};

// Zero-shot evaluation: the frozen source-language model embeds each target
// language's test and test' sets. Reports come in target order, test before
// test'; notes carry "source->target". Throws DimMismatch.
std::vector<ApReport> cross_lingual_eval(const model::AweModel& model,
                                         const std::string& source_language,
                                         std::span<const LanguageTarget> targets,
                                         const EvalOptions& opts = {});

// One row per language and set: `language,set,ap`.
void write_cross_lingual_table(std::span<const ApReport> reports,
                               std::ostream& out);

}  // namespace awe::eval
