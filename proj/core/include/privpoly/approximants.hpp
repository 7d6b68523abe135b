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

#ifndef PRIVPOLY_APPROXIMANTS_HPP_
#define PRIVPOLY_APPROXIMANTS_HPP_

#include <string>

#include "privpoly/lp.hpp"
#include "privpoly/polynomial.hpp"

namespace privpoly {

// Band contracts on the integer points 0..k:
//   kOr:        p(0) == 0 exactly, |p(x) - 1| <= gamma on 1..k
//   kThreshold: |p(x)| <= gamma on 0..r-1, |p(x) - 1| <= gamma on r..k
//   kDlHelper:  p(k) == 1 exactly, |p(x)| <= gamma/k on 0..k-1
enum class ApproximantKind { kOr, kThreshold, kDlHelper };

struct UnivariateApproximant {
  ApproximantKind kind = ApproximantKind::kOr;
  int k = 0;
  int r = 0;  // threshold position, kThreshold only
  UnivariatePoly poly;
  // Maximum band error of `poly`, re-measured by direct evaluation over
  // the integer points.
  double gamma = 0.0;
  double coeff_norm = 0.0;  // max |coefficient|
};

// Minimal-degree fits, searching degree 1, 2, ... and stopping at the
// first degree whose measured band error is within the target.  The
// search always terminates by degree k, where interpolation through the
// k+1 integer points is exact.
UnivariateApproximant construct_or_approximant(int k, double gamma);
UnivariateApproximant construct_threshold_approximant(int r, int k,
                                                      double gamma);
// `gamma` is the target for the enclosing decision-list contract; the
// helper itself is fit to the tightened band gamma / k.
UnivariateApproximant construct_dl_helper(int k, double gamma);

// Explicit product-of-Chebyshev construction for the threshold contract.
// The intermediate algebra runs in exact rational arithmetic and the band
// contract is re-checked both exactly and on the returned double
// coefficients; `verified` is true only when both checks pass.  `detail`
// records the tuning that was used, or why every attempt was rejected.
struct ExplicitThresholdResult {
  bool verified = false;
  std::string detail;
  UnivariateApproximant approximant;  // meaningful only when verified
};

ExplicitThresholdResult construct_threshold_explicit(int r, int k,
                                                     double gamma);

}  // namespace privpoly

#endif  // PRIVPOLY_APPROXIMANTS_HPP_
