// Copyright 2026 the sibf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIBF_ERRORS_HPP_
#define SIBF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sibf {

// Inconsistent shapes (signal too short, mismatched grids, ...).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid parameter values (inverted bands, negative entries, bad indices).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Matrix not positive definite / not invertible where required.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File read/write failures.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sibf

#endif  // SIBF_ERRORS_HPP_
