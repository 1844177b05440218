// Copyright 2026 The commchar Authors
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

#ifndef COMMCHAR_ERROR_HPP_
#define COMMCHAR_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commchar {

// Base class for all errors raised by the library. The CLI maps each
// subclass onto a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing input data (unreadable file, malformed line, unknown label).
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed edge-list or metadata line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = "")
      : InputError((source.empty() ? "line " : source + ":") + std::to_string(line) + ": " + detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class EmptyGraphError : public InputError {
 public:
  EmptyGraphError() : InputError("graph has no edges") {}
};

// Parameter outside its declared range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace commchar

#endif  // COMMCHAR_ERROR_HPP_
