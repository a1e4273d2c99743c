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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace awe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// features
class AudioTooShort : public Error {
 public:
  using Error::Error;
};
class UnsupportedSampleRate : public Error {
 public:
  using Error::Error;
};
class EmptySlice : public Error {
 public:
  using Error::Error;
};
class BadMagic : public Error {
 public:
  using Error::Error;
};
class VersionMismatch : public Error {
 public:
  using Error::Error;
};
class TruncatedFile : public Error {
 public:
  using Error::Error;
};

// pairs / eval
class TooFewInstances : public Error {
 public:
  using Error::Error;
};
class NoPositives : public Error {
 public:
  using Error::Error;
};
class DimMismatch : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// model
class MissingFeature : public Error {
 public:
  explicit MissingFeature(std::string instance_id)
      : Error("missing feature for instance '" + instance_id + "'"),
        instance_id_(std::move(instance_id)) {}
  const std::string& instance_id() const { return instance_id_; }

 private:
  std::string instance_id_;
};

class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

// analysis
class InsufficientInstances : public Error {
 public:
  explicit InsufficientInstances(std::string word)
      : Error("word '" + word +
              "' lacks instances from two different speakers"),
        word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// pipeline
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "' failed: " + what),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace awe
