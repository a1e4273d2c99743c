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

#include "awe/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "awe/error.hpp"
#include "awe/text.hpp"

namespace awe::corpus {
namespace {

constexpr std::size_t kNumFields = 7;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

double parse_seconds(std::string_view field, std::size_t line_no,
                     const char* name) {
  std::size_t dot = field.find('.');
  if (dot == std::string_view::npos || field.size() - dot - 1 < 3) {
    throw ParseError(line_no, std::string(name) +
                                  " needs at least 3 fractional digits: '" +
                                  std::string(field) + "'");
  }
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw ParseError(line_no, std::string("bad ") + name + ": '" +
                                  std::string(field) + "'");
  }
  return value;
}

void check_field(const std::string& value, const char* name) {
  if (value.find_first_of(",\n\r") != std::string::npos) {
    throw ValidationError(std::string(name) +
                          " contains a separator character: '" + value + "'");
  }
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "?";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw ValidationError("unknown split '" + std::string(name) + "'");
}

Manifest parse_manifest(std::istream& in, Split split, std::string language) {
  Manifest m;
  m.split = split;
  m.language = std::move(language);

  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      // Tolerate a UTF-8 BOM.
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (line != kManifestHeader) {
        throw ParseError(line_no, "expected header '" +
                                      std::string(kManifestHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    auto fields = split_fields(line);
    if (fields.size() != kNumFields) {
      throw ParseError(line_no, "expected " + std::to_string(kNumFields) +
                                    " fields, got " +
                                    std::to_string(fields.size()));
    }
    WordInstance w;
    w.instance_id = std::string(fields[0]);
    if (w.instance_id.empty()) throw ParseError(line_no, "empty instance_id");
    if (fields[1].empty()) throw ParseError(line_no, "empty word");
    try {
      w.word = text::normalize_label(fields[1]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    w.speaker_id = std::string(fields[2]);
    w.utterance_id = std::string(fields[3]);
    w.start_s = parse_seconds(fields[4], line_no, "start_s");
    w.end_s = parse_seconds(fields[5], line_no, "end_s");
    w.source = std::string(fields[6]);
    m.instances.push_back(std::move(w));
  }
  if (!saw_header) throw ParseError(1, "missing header");
  validate(m);
  return m;
}

Manifest load_manifest(const std::filesystem::path& path, Split split,
                       std::string language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  try {
    return parse_manifest(in, split, std::move(language));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

std::string format_seconds(double seconds) {
  char buf[64];
  for (int digits = 3; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*f", digits, seconds);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == seconds) break;
  }
  return buf;
}

void write_manifest(const Manifest& m, std::ostream& out) {
  out << kManifestHeader << '\n';
  for (const auto& w : m.instances) {
    check_field(w.instance_id, "instance_id");
    check_field(w.word, "word");
    check_field(w.speaker_id, "speaker_id");
    check_field(w.utterance_id, "utterance_id");
    check_field(w.source, "source");
    out << w.instance_id << ',' << w.word << ',' << w.speaker_id << ','
        << w.utterance_id << ',' << format_seconds(w.start_s) << ','
        << format_seconds(w.end_s) << ',' << w.source << '\n';
  }
}

void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest " + path.string());
  write_manifest(m, out);
  if (!out) throw IoError("write failed: " + path.string());
}

void validate(const Manifest& m) {
  std::unordered_set<std::string> seen;
  seen.reserve(m.instances.size());
  for (const auto& w : m.instances) {
    if (w.instance_id.empty()) throw ValidationError("empty instance_id");
    if (!seen.insert(w.instance_id).second) {
      throw ValidationError("duplicate instance_id '" + w.instance_id + "'");
    }
    if (!std::isfinite(w.start_s) || !std::isfinite(w.end_s) ||
        w.start_s < 0.0) {
      throw ValidationError("instance '" + w.instance_id +
                            "': start_s must be finite and >= 0");
    }
    if (!(w.end_s > w.start_s)) {
      throw ValidationError("instance '" + w.instance_id +
                            "': end_s must exceed start_s");
    }
  }
}

Manifest filter_instances(const Manifest& m, const FilterOptions& opts) {
  if (opts.min_freq > opts.max_freq) {
    throw ValidationError("min_freq exceeds max_freq");
  }
  Manifest out;
  out.split = m.split;
  out.language = m.language;

  std::vector<const WordInstance*> long_enough;
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& w : m.instances) {
    if (w.duration_s() >= opts.min_dur_s) {
      long_enough.push_back(&w);
      ++freq[w.word];
    }
  }
  for (const WordInstance* w : long_enough) {
    std::size_t f = freq[w->word];
    if (f >= opts.min_freq && f <= opts.max_freq) out.instances.push_back(*w);
  }
  return out;
}

Manifest build_test_prime(const Manifest& train, const Manifest& test) {
  std::unordered_set<std::string> seen;
  for (const auto& w : train.instances) seen.insert(w.word);
  Manifest out;
  out.split = test.split;
  out.language = test.language;
  for (const auto& w : test.instances) {
    if (!seen.contains(w.word)) out.instances.push_back(w);
  }
  return out;
}

CorpusStats stats(const Manifest& m) {
  CorpusStats s;
  std::unordered_set<std::string> words, speakers;
  double total_s = 0.0;
  for (const auto& w : m.instances) {
    words.insert(w.word);
    speakers.insert(w.speaker_id);
    total_s += w.duration_s();
  }
  s.num_instances = m.instances.size();
  s.num_unique_words = words.size();
  s.num_speakers = speakers.size();
  s.total_duration_h = total_s / 3600.0;
  return s;
}

std::vector<SpeakerOverlap> find_speaker_overlaps(
    const std::vector<const Manifest*>& splits) {
  std::map<std::string, Split> owner;
  std::vector<SpeakerOverlap> overlaps;
  std::set<std::pair<std::string, int>> reported;
  for (const Manifest* m : splits) {
    std::set<std::string> here;
    for (const auto& w : m->instances) here.insert(w.speaker_id);
    for (const auto& spk : here) {
      auto [it, inserted] = owner.emplace(spk, m->split);
      if (!inserted && it->second != m->split &&
          reported.emplace(spk, static_cast<int>(m->split)).second) {
        overlaps.push_back({spk, it->second, m->split});
      }
    }
  }
  return overlaps;
}

void check_speaker_disjoint(const Manifest& train, const Manifest& dev,
                            const Manifest& test) {
  auto overlaps = find_speaker_overlaps({&train, &dev, &test});
  if (!overlaps.empty()) {
    const auto& o = overlaps.front();
    throw ValidationError("speaker '" + o.speaker_id + "' appears in both " +
                          std::string(to_string(o.first)) + " and " +
                          std::string(to_string(o.second)));
  }
}

std::filesystem::path resolve_source(const std::filesystem::path& manifest_dir,
                                     const std::string& source) {
  std::filesystem::path p(source);
  if (p.is_absolute() || manifest_dir.empty()) return p;
  return manifest_dir / p;
}

Manifest with_absolute_sources(Manifest m,
                               const std::filesystem::path& manifest_path) {
  const auto dir = std::filesystem::absolute(manifest_path).parent_path();
  for (auto& inst : m.instances) {
    inst.source = resolve_source(dir, inst.source).string();
  }
  return m;
}

}  // namespace awe::corpus
