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

#ifndef PRIVPOLY_LP_HPP_
#define PRIVPOLY_LP_HPP_

#include <vector>

#include "privpoly/polynomial.hpp"

namespace privpoly {

// p(x) == value, enforced through the constraint system rather than the
// minimax objective.
struct EqualityConstraint {
  double x;
  double value;
};

// The fit keeps p(x) inside [lower, upper] up to the shared slack that the
// objective minimizes.  lower == upper expresses a plain target value.
struct BandConstraint {
  double x;
  double lower;
  double upper;
};

// Fit a polynomial of the given degree that satisfies every equality and
// minimizes the maximum band violation.
struct LpFeasibilityProblem {
  int degree = 0;
  std::vector<EqualityConstraint> equalities;
  std::vector<BandConstraint> bands;
};

struct MinimaxFit {
  UnivariatePoly poly;
  // Maximum band violation of `poly`, re-measured by direct evaluation;
  // never trusted from the solver.
  double achieved_error = 0.0;
  // Objective value reported by the solver, kept for diagnostics.
  double lp_objective = 0.0;
  // True when the monomial-basis solve broke down and the fit was redone
  // in the shifted Chebyshev basis.
  bool chebyshev_refit = false;
};

// Solves the minimax fit with a dense two-phase simplex.  Throws
// LpInfeasible when the equalities are contradictory and LpIllConditioned
// when no numerically trustworthy optimum is found in either basis.
MinimaxFit fit_minimax(const LpFeasibilityProblem& problem);

}  // namespace privpoly

#endif  // PRIVPOLY_LP_HPP_
