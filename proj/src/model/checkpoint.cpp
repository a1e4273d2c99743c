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

#include "awe/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include "awe/error.hpp"

namespace awe::model {
namespace {

static_assert(std::endian::native == std::endian::little);

template <typename T>
void put(std::vector<char>& out, T v) {
  const char* p = reinterpret_cast<const char*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::vector<char>& b) : b_(b) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, b_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  void bytes(void* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, b_.data() + pos_, n);
    pos_ += n;
  }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw TruncatedFile("checkpoint truncated");
  }
  const std::vector<char>& b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<char> encode_checkpoint(const AweModel& model) {
  const auto& cfg = model.config();
  std::vector<char> out = {'A', 'W', 'E', 'M'};
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.input_dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.enc_layers));
  put<std::uint8_t>(out, cfg.bidirectional ? 1 : 0);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.hidden_dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.embed_dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cfg.dec_layers));
  put<double>(out, cfg.dropout);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.params().size()));
  for (const auto& p : model.params()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.name.size()));
    out.insert(out.end(), p.name.begin(), p.name.end());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.value.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.value.cols()));
    for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.value.cols(); ++c) {
        put<float>(out, p.value(r, c));
      }
    }
  }
  return out;
}

AweModel decode_checkpoint(const std::vector<char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "AWEM", 4) != 0) {
    throw BadMagic("not an AWEM checkpoint");
  }
  Reader in(bytes);
  in.get<std::uint32_t>();  // magic
  const auto version = in.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw VersionMismatch("checkpoint version " + std::to_string(version));
  }
  AweModelConfig cfg;
  cfg.input_dim = static_cast<int>(in.get<std::uint32_t>());
  cfg.enc_layers = static_cast<int>(in.get<std::uint32_t>());
  cfg.bidirectional = in.get<std::uint8_t>() != 0;
  cfg.hidden_dim = static_cast<int>(in.get<std::uint32_t>());
  cfg.embed_dim = static_cast<int>(in.get<std::uint32_t>());
  cfg.dec_layers = static_cast<int>(in.get<std::uint32_t>());
  cfg.dropout = in.get<double>();

  AweModel model(cfg, 0);
  std::map<std::string, Param<float>*> by_name;
  for (auto& p : model.params()) by_name[p.name] = &p;

  const auto count = in.get<std::uint32_t>();
  if (count != model.params().size()) {
    throw ValidationError("checkpoint has " + std::to_string(count) +
                          " tensors, config implies " +
                          std::to_string(model.params().size()));
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name(in.get<std::uint32_t>(), '\0');
    in.bytes(name.data(), name.size());
    const auto rows = in.get<std::uint32_t>();
    const auto cols = in.get<std::uint32_t>();
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw ValidationError("unexpected tensor '" + name + "'");
    }
    auto& v = it->second->value;
    if (rows != v.rows() || cols != v.cols()) {
      throw ValidationError("tensor '" + name + "' has wrong shape");
    }
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) v(r, c) = in.get<float>();
    }
    by_name.erase(it);
  }
  if (!model.all_finite()) {
    throw ValidationError("checkpoint has non-finite parameters");
  }
  return model;
}

void save_checkpoint(const AweModel& model, const std::filesystem::path& path) {
  auto bytes = encode_checkpoint(model);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

AweModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace awe::model
