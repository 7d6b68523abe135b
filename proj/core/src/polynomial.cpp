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

#include "privpoly/polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <string>

namespace privpoly {

using boost::multiprecision::cpp_int;

int UnivariatePoly::effective_degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[i] != 0.0) return i;
  }
  return -1;
}

double UnivariatePoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

double UnivariatePoly::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * x + coeffs[i];
  }
  return acc;
}

UnivariatePoly chebyshev_polynomial(int z) {
  if (z < 0) throw InvalidArgument("Chebyshev order must be non-negative");
  UnivariatePoly prev{{1.0}};
  if (z == 0) return prev;
  UnivariatePoly cur{{0.0, 1.0}};
  for (int i = 2; i <= z; ++i) {
    UnivariatePoly next;
    next.coeffs.assign(i + 1, 0.0);
    for (int j = 0; j < i; ++j) next.coeffs[j + 1] = 2.0 * cur.coeffs[j];
    for (std::size_t j = 0; j < prev.coeffs.size(); ++j) {
      next.coeffs[j] -= prev.coeffs[j];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

// C(n, k) in floating point; exact as long as the value fits in 53 bits.
double binom_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double res = 1.0;
  for (int i = 1; i <= k; ++i) res = res * (n - k + i) / i;
  return res;
}

}  // namespace

UnivariatePoly compose_univariate_affine(const UnivariatePoly& g, double a,
                                         double b) {
  const int d = g.effective_degree();
  UnivariatePoly out;
  out.coeffs.assign(static_cast<std::size_t>(std::max(d, 0)) + 1, 0.0);
  for (int i = 0; i <= d; ++i) {
    const double ci = g.coeffs[i];
    if (ci == 0.0) continue;
    double a_pow = 1.0;
    // (a + b x)^i = sum_j C(i, j) a^{i-j} b^j x^j, accumulated from j = i
    // downward so powers of a build up multiplicatively.
    for (int j = i; j >= 0; --j) {
      out.coeffs[j] += ci * binom_double(i, j) * a_pow * std::pow(b, j);
      a_pow *= a;
    }
  }
  return out;
}

double CoefficientVector::eval(const std::vector<std::uint8_t>& y) const {
  if (y.size() != space.num_variables()) {
    throw DimensionMismatch("point has " + std::to_string(y.size()) +
                            " coordinates, space has " +
                            std::to_string(space.num_variables()) +
                            " variables");
  }
  double acc = 0.0;
  space.for_each([&](std::uint64_t idx, const std::vector<std::uint32_t>& e) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0 && y[j] == 0) return;
    }
    acc += values[idx];
  });
  return acc;
}

double CoefficientVector::norm_inf() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

CoefficientVector& CoefficientVector::operator+=(
    const CoefficientVector& other) {
  if (!(space == other.space)) {
    throw DimensionMismatch("coefficient vectors live in different spaces");
  }
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

void CoefficientVector::scale(double factor) {
  for (double& v : values) v *= factor;
}

std::vector<std::uint64_t> active_indices(const MonomialIndexSpace& space,
                                          const std::vector<std::uint8_t>& y) {
  if (y.size() != space.num_variables()) {
    throw DimensionMismatch("point arity does not match the index space");
  }
  std::vector<std::uint64_t> out;
  space.for_each([&](std::uint64_t idx, const std::vector<std::uint32_t>& e) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0 && y[j] == 0) return;
    }
    out.push_back(idx);
  });
  return out;
}

namespace {

struct AffineExpansion {
  const UnivariatePoly& g;
  int deg;
  double constant;
  const std::vector<double>& weights;
  const std::vector<std::uint32_t>& support;
  const MonomialIndexSpace& space;
  std::vector<cpp_int> factorial;
  MultiIndex scratch;
  CoefficientVector* out;

  // Walks every exponent assignment on the support with total degree
  // <= deg; `denom` carries the product of the exponent factorials.
  void walk(std::size_t pos, int used, double weight_product,
            const cpp_int& denom) {
    if (pos == support.size()) {
      emit(used, weight_product, denom);
      return;
    }
    const std::uint32_t var = support[pos];
    cpp_int d = denom;
    double wp = weight_product;
    for (int v = 0; used + v <= deg; ++v) {
      if (v > 0) {
        d *= v;
        wp *= weights[var];
      }
      scratch.exponents[var] = static_cast<std::uint32_t>(v);
      walk(pos + 1, used + v, wp, d);
    }
    scratch.exponents[var] = 0;
  }

  void emit(int s, double weight_product, const cpp_int& denom) {
    double inner = 0.0;
    if (constant == 0.0) {
      // Only the z^s term survives.
      const double c = g.coeffs[s];
      if (c != 0.0) {
        inner = c * (factorial[s] / denom).convert_to<double>();
      }
    } else {
      double const_pow = 1.0;
      for (int i = s; i <= deg; ++i) {
        const double c = g.coeffs[i];
        if (c != 0.0) {
          const cpp_int multinomial = factorial[i] / (denom * factorial[i - s]);
          inner += c * multinomial.convert_to<double>() * const_pow;
        }
        const_pow *= constant;
      }
    }
    if (inner == 0.0 && weight_product == 0.0) return;
    out->values[space.index_of(scratch)] += weight_product * inner;
  }
};

}  // namespace

CoefficientVector compose_affine(const UnivariatePoly& g,
                                 const std::vector<double>& weights,
                                 double constant,
                                 const MonomialIndexSpace& space) {
  if (weights.size() != space.num_variables()) {
    throw DimensionMismatch("weight vector arity does not match the space");
  }
  CoefficientVector out(space);
  const int d = g.effective_degree();
  if (d < 0) return out;
  if (d > static_cast<int>(space.max_degree())) {
    throw InvalidArgument("univariate degree " + std::to_string(d) +
                          " exceeds the space maximum " +
                          std::to_string(space.max_degree()));
  }

  std::vector<std::uint32_t> support;
  for (std::uint32_t j = 0; j < weights.size(); ++j) {
    if (weights[j] != 0.0) support.push_back(j);
  }

  AffineExpansion ex{g,       d,  constant, weights, support,
                     space,   {}, {},       &out};
  ex.factorial.resize(d + 1);
  ex.factorial[0] = 1;
  for (int i = 1; i <= d; ++i) ex.factorial[i] = ex.factorial[i - 1] * i;
  ex.scratch.exponents.assign(space.num_variables(), 0);
  ex.walk(0, 0, 1.0, cpp_int(1));
  return out;
}

}  // namespace privpoly
