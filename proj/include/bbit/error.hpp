// Copyright 2026 The bbit Authors
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

namespace bbit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  /// Short machine-readable code, e.g. "E_PARSE".
  virtual const char* code() const noexcept { return "E_DATA"; }
};

/// Malformed svmlight text. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }
  const char* code() const noexcept override { return "E_PARSE"; }

 private:
  std::size_t line_;
};

/// Corrupt, truncated or incompatible binary file.
class FormatError : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "E_FORMAT"; }
};

/// Violated precondition on data or parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "E_DATA"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "E_IO"; }
};

}  // namespace bbit
