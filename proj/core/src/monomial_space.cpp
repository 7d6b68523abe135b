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

#include "privpoly/monomial_space.hpp"

#include <numeric>
#include <string>

namespace privpoly {
namespace {

// C(n, k), exact.  Callers only request values bounded by the size of an
// already-validated index space, so the result fits in 64 bits; the
// intermediate product is widened to be safe.
std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 res = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    res = res * (n - k + i) / i;
  }
  return static_cast<std::uint64_t>(res);
}

// Count of q-tuples of non-negative integers with sum exactly s.
std::uint64_t compositions(std::uint64_t s, std::uint64_t q) {
  if (q == 0) return s == 0 ? 1 : 0;
  return binom(s + q - 1, q - 1);
}

}  // namespace

std::uint32_t MultiIndex::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint32_t{0});
}

std::uint64_t index_space_size(std::uint64_t m, std::uint64_t t,
                               std::uint64_t cap) {
  // C(m+t, t), multiplying factor by factor; every partial product is
  // itself a binomial coefficient, so the division is exact.
  std::uint64_t r = t < m ? t : m;
  unsigned __int128 res = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    res = res * (m + t - r + i) / i;
    if (res > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(res);
}

MonomialIndexSpace::MonomialIndexSpace(std::uint32_t num_variables,
                                       std::uint32_t max_degree,
                                       std::uint64_t max_size)
    : m_(num_variables), t_(max_degree) {
  if (m_ == 0) {
    throw InvalidArgument("monomial index space needs at least one variable");
  }
  size_ = index_space_size(m_, t_, max_size);
  if (size_ > max_size) {
    throw IndexSpaceTooLarge(
        "index space too large: C(m+t, t) exceeds the cap of " +
        std::to_string(max_size) + " coordinates (m=" + std::to_string(m_) +
        ", t=" + std::to_string(t_) + ")");
  }
}

std::uint64_t MonomialIndexSpace::index_of(const MultiIndex& mi) const {
  if (mi.exponents.size() != m_) {
    throw DimensionMismatch("multi-index has " +
                            std::to_string(mi.exponents.size()) +
                            " entries, space has " + std::to_string(m_) +
                            " variables");
  }
  const std::uint64_t deg = mi.total_degree();
  if (deg > t_) {
    throw InvalidArgument("multi-index degree " + std::to_string(deg) +
                          " exceeds space maximum " + std::to_string(t_));
  }
  // Monomials of strictly smaller total degree come first.
  std::uint64_t rank = deg == 0 ? 0 : binom(m_ + deg - 1, deg - 1);
  // Within the degree-`deg` block, count tuples that precede `mi`
  // lexicographically: at each position, sum over smaller values the
  // number of completions of the remaining positions.
  std::uint64_t rem = deg;
  for (std::uint32_t l = 0; l + 1 < m_; ++l) {
    const std::uint64_t q = m_ - l - 1;
    const std::uint64_t j = mi.exponents[l];
    // sum_{v < j} compositions(rem - v, q), telescoped.
    rank += binom(rem + q, q) - binom(rem - j + q, q);
    rem -= j;
  }
  return rank;
}

MultiIndex MonomialIndexSpace::multi_index_of(std::uint64_t index) const {
  if (index >= size_) {
    throw InvalidArgument("monomial index " + std::to_string(index) +
                          " out of range (size " + std::to_string(size_) +
                          ")");
  }
  // Locate the total-degree block.
  std::uint64_t deg = 0;
  while (binom(m_ + deg, deg) <= index) ++deg;
  std::uint64_t r = index - (deg == 0 ? 0 : binom(m_ + deg - 1, deg - 1));

  MultiIndex mi;
  mi.exponents.assign(m_, 0);
  std::uint64_t rem = deg;
  for (std::uint32_t l = 0; l + 1 < m_; ++l) {
    const std::uint64_t q = m_ - l - 1;
    std::uint64_t v = 0;
    while (true) {
      const std::uint64_t block = compositions(rem - v, q);
      if (r < block) break;
      r -= block;
      ++v;
    }
    mi.exponents[l] = static_cast<std::uint32_t>(v);
    rem -= v;
  }
  mi.exponents[m_ - 1] = static_cast<std::uint32_t>(rem);
  return mi;
}

void MonomialIndexSpace::for_each(
    const std::function<void(std::uint64_t,
                             const std::vector<std::uint32_t>&)>& fn) const {
  std::vector<std::uint32_t> e(m_, 0);
  std::uint64_t index = 0;
  fn(index++, e);
  for (std::uint32_t d = 1; d <= t_; ++d) {
    if (index >= size_) break;
    std::fill(e.begin(), e.end(), 0);
    e[m_ - 1] = d;
    fn(index++, e);
    while (true) {
      // Successor within the fixed-degree block: bump the rightmost
      // position that has mass strictly to its right, then push the
      // remaining mass all the way right.
      std::uint64_t suffix = 0;
      std::int64_t p = -1;
      for (std::int64_t l = static_cast<std::int64_t>(m_) - 2; l >= 0; --l) {
        suffix += e[l + 1];
        if (suffix > 0) {
          p = l;
          break;
        }
      }
      if (p < 0) break;
      e[p] += 1;
      for (std::uint32_t l = p + 1; l < m_; ++l) e[l] = 0;
      e[m_ - 1] = static_cast<std::uint32_t>(suffix - 1);
      fn(index++, e);
    }
  }
}

double eval_monomial(const MultiIndex& mi,
                     const std::vector<std::uint8_t>& y) {
  if (mi.exponents.size() != y.size()) {
    throw DimensionMismatch("point has " + std::to_string(y.size()) +
                            " coordinates, multi-index has " +
                            std::to_string(mi.exponents.size()));
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (mi.exponents[j] > 0 && y[j] == 0) return 0.0;
  }
  return 1.0;
}

}  // namespace privpoly
