// Copyright 2026 The aqss-lab Authors
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

#include <stdexcept>
#include <string>

namespace aqss {

/// Operand shapes or subsystem dimensions do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix failed the density-matrix or unitary invariants.
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A scalar parameter lies outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A key index is out of range or a receiver's key is missing.
class KeyError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The requested problem exceeds the desk-scale resource limits.
class ResourceLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace aqss
