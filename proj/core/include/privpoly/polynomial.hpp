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

#ifndef PRIVPOLY_POLYNOMIAL_HPP_
#define PRIVPOLY_POLYNOMIAL_HPP_

#include <cstdint>
#include <vector>

#include "privpoly/monomial_space.hpp"

namespace privpoly {

// Dense univariate polynomial; coeffs[i] multiplies x^i.  Trailing zero
// coefficients are permitted, so degree() is an upper bound.
struct UnivariatePoly {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  // Highest index with a non-zero coefficient (-1 for the zero polynomial).
  int effective_degree() const;
  double max_abs_coeff() const;

  // Horner evaluation.
  double operator()(double x) const;
};

// Chebyshev polynomial of the first kind, T_z, from the recurrence
// T_0 = 1, T_1 = x, T_z = 2 x T_{z-1} - T_{z-2}.
UnivariatePoly chebyshev_polynomial(int z);

// The polynomial x -> g(a + b x), expanded by the binomial theorem.
UnivariatePoly compose_univariate_affine(const UnivariatePoly& g, double a,
                                         double b);

// A vector of real coefficients indexed by a MonomialIndexSpace.
struct CoefficientVector {
  MonomialIndexSpace space;
  std::vector<double> values;

  explicit CoefficientVector(const MonomialIndexSpace& s)
      : space(s), values(s.size(), 0.0) {}

  // Value of the polynomial at a 0/1 point: the sum of coefficients whose
  // monomial evaluates to 1 there, taken in ascending index order.
  double eval(const std::vector<std::uint8_t>& y) const;

  double norm_inf() const;

  CoefficientVector& operator+=(const CoefficientVector& other);
  void scale(double factor);
};

// Indices whose monomial evaluates to 1 at the 0/1 point y, ascending.
// Summing a coefficient vector over this list reproduces eval(y) exactly.
std::vector<std::uint64_t> active_indices(const MonomialIndexSpace& space,
                                          const std::vector<std::uint8_t>& y);

// Expansion of y -> g(constant + sum_j weights[j] * y_j) over `space`.
// Multinomial coefficients are computed as exact integers before the
// conversion to floating point.  The effective degree of g must not
// exceed the maximum degree of the space.
CoefficientVector compose_affine(const UnivariatePoly& g,
                                 const std::vector<double>& weights,
                                 double constant,
                                 const MonomialIndexSpace& space);

}  // namespace privpoly

#endif  // PRIVPOLY_POLYNOMIAL_HPP_
