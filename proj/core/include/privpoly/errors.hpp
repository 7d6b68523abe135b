//
// Copyright 2026 The privpoly Authors
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
//

#ifndef PRIVPOLY_ERRORS_HPP_
#define PRIVPOLY_ERRORS_HPP_

#include <stdexcept>

namespace privpoly {

// Violated precondition on arguments (ranges, flag combinations, ...).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two objects that must share a shape (vector lengths, variable counts)
// do not.
struct DimensionMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// The coordinate count C(m+t, t) would exceed the configured cap.
struct IndexSpaceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The equality constraints of a fit admit no solution.
struct LpInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The solver could not produce a numerically trustworthy optimum,
// even after a refit in the shifted Chebyshev basis.
struct LpIllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A query index outside the admissible index set of the family.
struct IndexSetViolation : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Malformed input text; messages carry the line / token position.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive enumeration was requested above the configured cap.
struct AuditScaleExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace privpoly

#endif  // PRIVPOLY_ERRORS_HPP_
