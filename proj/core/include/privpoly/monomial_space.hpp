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

#ifndef PRIVPOLY_MONOMIAL_SPACE_HPP_
#define PRIVPOLY_MONOMIAL_SPACE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "privpoly/errors.hpp"

namespace privpoly {

// Exponent tuple (j_1, ..., j_m) of one monomial y_1^{j_1} ... y_m^{j_m}.
struct MultiIndex {
  std::vector<std::uint32_t> exponents;

  std::uint32_t total_degree() const;
  bool operator==(const MultiIndex&) const = default;
};

// Number of monomials over m variables with total degree <= t, i.e.
// C(m+t, t).  Saturates at `cap` so that oversized parameter choices are
// detected without overflow.
std::uint64_t index_space_size(std::uint64_t m, std::uint64_t t,
                               std::uint64_t cap);

// All monomials over m variables with total degree <= t, enumerated in
// graded lexicographic order: ascending total degree, ties broken by
// ascending lexicographic comparison of the exponent tuple.  Every
// coefficient vector in this library is indexed by this enumeration.
class MonomialIndexSpace {
 public:
  static constexpr std::uint64_t kDefaultMaxSize = 2'000'000;

  // Throws IndexSpaceTooLarge when C(m+t, t) exceeds max_size.
  MonomialIndexSpace(std::uint32_t num_variables, std::uint32_t max_degree,
                     std::uint64_t max_size = kDefaultMaxSize);

  std::uint32_t num_variables() const { return m_; }
  std::uint32_t max_degree() const { return t_; }
  std::uint64_t size() const { return size_; }

  // Rank of the exponent tuple in the enumeration; inverse of
  // multi_index_of.  Throws on wrong arity or degree above max_degree.
  std::uint64_t index_of(const MultiIndex& mi) const;
  MultiIndex multi_index_of(std::uint64_t index) const;

  // Calls fn(index, exponents) for every monomial, in enumeration order.
  // The exponent vector is reused between calls.
  void for_each(
      const std::function<void(std::uint64_t index,
                               const std::vector<std::uint32_t>& exponents)>&
          fn) const;

  bool operator==(const MonomialIndexSpace& other) const {
    return m_ == other.m_ && t_ == other.t_;
  }

 private:
  std::uint32_t m_;
  std::uint32_t t_;
  std::uint64_t size_;
};

// Value of the monomial at a 0/1 point: 1.0 when every variable with a
// positive exponent is 1 (so 0^0 == 1), else 0.0.
double eval_monomial(const MultiIndex& mi, const std::vector<std::uint8_t>& y);

}  // namespace privpoly

#endif  // PRIVPOLY_MONOMIAL_SPACE_HPP_
