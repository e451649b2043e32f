// Copyright 2026 The projcd Authors.
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

#ifndef PROJCD_ERRORS_H_
#define PROJCD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace projcd {

// Base class for failures caused by the data or parameters of a computation
// (as opposed to malformed input files or command lines).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the documented range.
class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A geometric quantity is undefined for the given input, e.g. the latitude
// of the zero vector or the correlation distance of a pole.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Node index out of range, or i == j where a pair was expected.
class IndexError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed file or config contents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace projcd

#endif  // PROJCD_ERRORS_H_
