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

#include <cmath>
#include <string>

#include <doctest.h>

#include "privpoly/approximants.hpp"
#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

double step_band_error(const UnivariatePoly& p, int r, int k) {
  double worst = 0.0;
  for (int x = 0; x <= k; ++x) {
    const double target = x >= r ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(p(static_cast<double>(x)) - target));
  }
  return worst;
}

TEST_CASE("outside the product regime the exact interpolation path runs") {
  // r=2, k=12 violates r < k / ln^2 k, so the closed-form product
  // construction does not apply and exact interpolation is used.
  const ExplicitThresholdResult result = construct_threshold_explicit(2, 12, 0.1);
  CHECK(result.verified);
  CHECK(result.detail.find("interpolation") != std::string::npos);
  CHECK(result.approximant.poly.degree() == 12);
  CHECK(step_band_error(result.approximant.poly, 2, 12) <= 0.1 + 1e-9);
}

TEST_CASE("inside the regime the product construction can verify") {
  // r=1, k=8, gamma=0.3: one of the tuning candidates passes both the
  // exact rational band check and the double-precision recheck.
  const ExplicitThresholdResult result = construct_threshold_explicit(1, 8, 0.3);
  CHECK(result.verified);
  CHECK(result.detail.find("verified") != std::string::npos);
  CHECK(step_band_error(result.approximant.poly, 1, 8) <= 0.3 + 1e-9);
  // The construction pays with much higher degree than the LP route.
  CHECK(result.approximant.poly.degree() > 8);
}

TEST_CASE("a failed double-precision recheck is reported, not hidden") {
  // r=1, k=8, gamma=0.1: the exact bands hold for some tunings but the
  // double-precision coefficients are useless; the result must say so.
  const ExplicitThresholdResult result = construct_threshold_explicit(1, 8, 0.1);
  CHECK_FALSE(result.verified);
  CHECK(result.detail.find("explicit-path verification failed") !=
        std::string::npos);
}

TEST_CASE("interpolation fallback is exact at every integer point") {
  const ExplicitThresholdResult result = construct_threshold_explicit(3, 6, 0.2);
  CHECK(result.verified);
  CHECK(step_band_error(result.approximant.poly, 3, 6) <= 1e-8);
}

TEST_CASE("explicit construction validates its arguments") {
  CHECK_THROWS_AS(construct_threshold_explicit(0, 4, 0.1), InvalidArgument);
  CHECK_THROWS_AS(construct_threshold_explicit(5, 4, 0.1), InvalidArgument);
  CHECK_THROWS_AS(construct_threshold_explicit(1, 4, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace privpoly
