// Copyright 2026 The quadgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace quadgate {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Input that is well-formed but uses a construct outside the supported
// subset (property paths, blank nodes, VALUES, ...).
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& construct)
      : Error("unsupported construct: " + construct), construct_(construct) {}

  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

// A value violating a domain invariant (variable inside a ground quad, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace quadgate
