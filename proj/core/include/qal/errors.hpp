// Copyright 2026 The qal Authors
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

#include <stdexcept>
#include <string>

namespace qal {

/// Argument outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Statistics that cannot be formed from the given sample (too few points,
/// zero variance).
class DegenerateStatistics : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requested on a model kind that does not support it.
class KindError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad command line or config file. Maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qal
