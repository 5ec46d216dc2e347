// Copyright 2026 The grammeval Authors.
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

#ifndef GRAMMEVAL_ERROR_HPP_
#define GRAMMEVAL_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grammeval {

// Base class for invalid input data (bad files, broken invariants).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text at a known line.
class ParseError : public DataError {
 public:
  ParseError(const std::string& origin, std::size_t line,
             const std::string& what)
      : DataError(origin + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed rows that do not form a valid dependency tree.
class StructureError : public DataError {
 public:
  using DataError::DataError;
};

// A file could not be opened.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace grammeval

#endif  // GRAMMEVAL_ERROR_HPP_
