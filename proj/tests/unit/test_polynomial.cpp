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
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "privpoly/errors.hpp"
#include "privpoly/monomial_space.hpp"
#include "privpoly/polynomial.hpp"

namespace privpoly {
namespace {

TEST_CASE("univariate evaluation and degree helpers") {
  const UnivariatePoly p{{1.0, -2.0, 0.0, 3.0}};
  CHECK(p.degree() == 3);
  CHECK(p.effective_degree() == 3);
  CHECK(p(0.0) == 1.0);
  CHECK(p(1.0) == doctest::Approx(2.0));
  CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 24.0));
  CHECK(p.max_abs_coeff() == 3.0);

  const UnivariatePoly trailing{{0.5, 1.0, 0.0, 0.0}};
  CHECK(trailing.degree() == 3);
  CHECK(trailing.effective_degree() == 1);
}

TEST_CASE("chebyshev polynomials match the classical coefficients") {
  // T_3 = 4x^3 - 3x, T_5 = 16x^5 - 20x^3 + 5x.
  const UnivariatePoly t3 = chebyshev_polynomial(3);
  REQUIRE(t3.coeffs.size() == 4);
  CHECK(t3.coeffs[0] == 0.0);
  CHECK(t3.coeffs[1] == -3.0);
  CHECK(t3.coeffs[2] == 0.0);
  CHECK(t3.coeffs[3] == 4.0);

  const UnivariatePoly t5 = chebyshev_polynomial(5);
  REQUIRE(t5.coeffs.size() == 6);
  CHECK(t5.coeffs[5] == 16.0);
  CHECK(t5.coeffs[3] == -20.0);
  CHECK(t5.coeffs[1] == 5.0);
  CHECK(t5.max_abs_coeff() == 20.0);

  // |T_n| <= 1 on [-1, 1].
  for (int i = 0; i <= 20; ++i) {
    const double x = -1.0 + 0.1 * i;
    CHECK(std::abs(t5(x)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("affine substitution expands g(a + b x) correctly") {
  // g(z) = z^2, a=1, b=2: (1 + 2x)^2 = 1 + 4x + 4x^2.
  const UnivariatePoly g{{0.0, 0.0, 1.0}};
  const UnivariatePoly h = compose_univariate_affine(g, 1.0, 2.0);
  REQUIRE(h.coeffs.size() == 3);
  CHECK(h.coeffs[0] == doctest::Approx(1.0));
  CHECK(h.coeffs[1] == doctest::Approx(4.0));
  CHECK(h.coeffs[2] == doctest::Approx(4.0));

  // Property: values agree pointwise with direct evaluation.
  const UnivariatePoly g2{{0.5, -1.0, 2.0, 0.25}};
  const UnivariatePoly h2 = compose_univariate_affine(g2, -0.75, 1.5);
  for (int i = -4; i <= 4; ++i) {
    const double x = 0.5 * i;
    CHECK(h2(x) == doctest::Approx(g2(-0.75 + 1.5 * x)).epsilon(1e-12));
  }
}

TEST_CASE("coefficient vectors evaluate by summing active monomials") {
  const MonomialIndexSpace space(2, 2);
  CoefficientVector v(space);
  // 2 + 3 y2 + 5 y1 y2
  v.values[space.index_of(MultiIndex{{0, 0}})] = 2.0;
  v.values[space.index_of(MultiIndex{{0, 1}})] = 3.0;
  v.values[space.index_of(MultiIndex{{1, 1}})] = 5.0;
  CHECK(v.eval({0, 0}) == 2.0);
  CHECK(v.eval({1, 0}) == 2.0);
  CHECK(v.eval({0, 1}) == 5.0);
  CHECK(v.eval({1, 1}) == 10.0);
  CHECK(v.norm_inf() == 5.0);
}

TEST_CASE("active index gather reproduces eval exactly") {
  const MonomialIndexSpace space(4, 3);
  CoefficientVector v(space);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    v.values[i] = std::sin(static_cast<double>(i) + 0.3) * 1e3;
  }
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> y(4);
    for (int j = 0; j < 4; ++j) y[j] = (mask >> j) & 1;
    double gathered = 0.0;
    for (std::uint64_t idx : active_indices(space, y)) {
      gathered += v.values[idx];
    }
    // Bitwise identity, not approximate: both sides must add the same
    // coefficients in the same order.
    CHECK(gathered == v.eval(y));
  }
}

TEST_CASE("compose_affine expands a square over two variables") {
  // (y1 + y2)^2 = y1^2 + 2 y1 y2 + y2^2.
  const MonomialIndexSpace space(2, 2);
  const UnivariatePoly g{{0.0, 0.0, 1.0}};
  const CoefficientVector v = compose_affine(g, {1.0, 1.0}, 0.0, space);
  CHECK(v.values[space.index_of(MultiIndex{{0, 0}})] == 0.0);
  CHECK(v.values[space.index_of(MultiIndex{{2, 0}})] == doctest::Approx(1.0));
  CHECK(v.values[space.index_of(MultiIndex{{1, 1}})] == doctest::Approx(2.0));
  CHECK(v.values[space.index_of(MultiIndex{{0, 2}})] == doctest::Approx(1.0));
  CHECK(v.values[space.index_of(MultiIndex{{1, 0}})] == 0.0);
}

TEST_CASE("compose_affine handles constants and zero weights") {
  // g(z) = z^2 at z = 1 + y1: 1 + 2 y1 + y1^2; y2 never appears.
  const MonomialIndexSpace space(2, 2);
  const UnivariatePoly g{{0.0, 0.0, 1.0}};
  const CoefficientVector v = compose_affine(g, {1.0, 0.0}, 1.0, space);
  CHECK(v.values[space.index_of(MultiIndex{{0, 0}})] == doctest::Approx(1.0));
  CHECK(v.values[space.index_of(MultiIndex{{1, 0}})] == doctest::Approx(2.0));
  CHECK(v.values[space.index_of(MultiIndex{{2, 0}})] == doctest::Approx(1.0));
  CHECK(v.values[space.index_of(MultiIndex{{0, 1}})] == 0.0);
  CHECK(v.values[space.index_of(MultiIndex{{0, 2}})] == 0.0);
  CHECK(v.values[space.index_of(MultiIndex{{1, 1}})] == 0.0);
}

TEST_CASE("compose_affine agrees with direct evaluation on 0/1 points") {
  const MonomialIndexSpace space(4, 3);
  const UnivariatePoly g{{0.25, -1.5, 0.75, 0.125}};
  const std::vector<double> weights = {1.0, -1.0, 2.0, 0.5};
  const double constant = 0.75;
  const CoefficientVector v = compose_affine(g, weights, constant, space);
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> y(4);
    double z = constant;
    for (int j = 0; j < 4; ++j) {
      y[j] = (mask >> j) & 1;
      z += weights[j] * y[j];
    }
    CHECK(v.eval(y) == doctest::Approx(g(z)).epsilon(1e-12));
  }
}

TEST_CASE("compose_affine validates dimensions and degree") {
  const MonomialIndexSpace space(2, 1);
  const UnivariatePoly quadratic{{0.0, 0.0, 1.0}};
  const UnivariatePoly linear{{0.0, 1.0}};
  CHECK_THROWS_AS(compose_affine(quadratic, {1.0, 1.0}, 0.0, space),
                  InvalidArgument);
  CHECK_THROWS_AS(compose_affine(linear, {1.0}, 0.0, space),
                  DimensionMismatch);
  CHECK_NOTHROW(compose_affine(linear, {1.0, 1.0}, 0.0, space));
}

TEST_CASE("coefficient vector addition requires matching spaces") {
  CoefficientVector a{MonomialIndexSpace(2, 2)};
  CoefficientVector b{MonomialIndexSpace(2, 2)};
  CoefficientVector c{MonomialIndexSpace(3, 2)};
  CHECK_NOTHROW(a += b);
  CHECK_THROWS_AS(a += c, DimensionMismatch);
}

}  // namespace
}  // namespace privpoly
