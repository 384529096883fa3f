// Copyright 2026 The kpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
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

namespace kpd {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vocabularies, invalid pairs, seeds outside the open atoms.
class StructuralError : public Error {
 public:
  using Error::Error;
};

struct SourceLoc {
  std::size_t line = 0;
  std::size_t column = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, SourceLoc loc)
      : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) +
              ": " + what),
        loc_(loc) {}

  SourceLoc where() const { return loc_; }

 private:
  SourceLoc loc_;
};

/// A modal operator inside the scope of another one.
class NestingError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Wrong arity, unknown predicate or constant, inconsistent variable sort.
class SortError : public Error {
 public:
  using Error::Error;
};

class GroundError : public Error {
 public:
  using Error::Error;
};

/// An evaluator or engine was handed a construct it does not accept.
class MisuseError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to a structure where it is not applicable.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search ran out of its node/trace budget.
class SearchBoundError : public Error {
 public:
  using Error::Error;
};

/// Model search refused to start because the seed space is too large.
class SearchSpaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace kpd
