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

#include "awe/cross_lingual.hpp"

#include <cstdio>
#include <ostream>

#include "awe/error.hpp"
#include "awe/model/embed.hpp"

namespace awe::eval {

std::vector<ApReport> cross_lingual_eval(const model::AweModel& model,
                                         const std::string& source_language,
                                         std::span<const LanguageTarget> targets,
                                         const EvalOptions& opts) {
  std::vector<ApReport> reports;
  for (const auto& target : targets) {
    if (!target.features) {
      throw ValidationError("target '" + target.language + "' has no features");
    }
    for (const auto* m : {&target.test, &target.test_prime}) {
      if (m->empty()) continue;
      const int dim = target.features->get(m->instances.front().instance_id).dim();
      if (dim != model.config().input_dim) {
        throw DimMismatch("target '" + target.language + "' features have dim " +
                          std::to_string(dim) + ", model expects " +
                          std::to_string(model.config().input_dim));
      }
      auto set = model::embed_manifest(model, *m, *target.features);
      EvalOptions o = opts;
      o.set_tag = m == &target.test ? "test" : "test'";
      o.language = target.language;
      ApReport r = evaluate(set, o);
      r.notes = source_language + "->" + target.language + " zero-shot; " +
                r.notes;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

void write_cross_lingual_table(std::span<const ApReport> reports,
                               std::ostream& out) {
  out << "language,set,ap\n";
  char buf[32];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%.4f", r.ap);
    out << r.language << ',' << r.set_tag << ',' << buf << '\n';
  }
}

}  // namespace awe::eval
