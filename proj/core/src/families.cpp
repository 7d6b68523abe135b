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

#include "privpoly/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

void check_bits(const std::vector<std::uint8_t>& bits, const char* what) {
  for (std::uint8_t b : bits) {
    if (b > 1) {
      throw InvalidArgument(std::string(what) + " entries must be 0 or 1");
    }
  }
}

int popcount(const std::vector<std::uint8_t>& bits) {
  int c = 0;
  for (std::uint8_t b : bits) c += b;
  return c;
}

// Shared by the two bit-vector families; the decision-list family uses the
// helper polynomial instead.
QueryFamily assemble(FamilyKind kind, int k, int r, int m, double gamma,
                     UnivariateApproximant univariate,
                     std::uint64_t max_coords) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  const int t = std::max(0, univariate.poly.effective_degree());
  if (t < 1) throw InvalidArgument("approximating polynomial is constant");
  QueryFamily family{FamilyDescriptor{kind, k, r, m, gamma, t, 0.0},
                     std::move(univariate), MonomialIndexSpace(m, t, max_coords)};
  family.desc.norm_bound =
      certified_norm_bound(kind, family.univariate.poly, k);
  return family;
}

// Appends `count`-subsets of {0..m-1} as bit vectors, in lexicographic order
// of the selected positions.
void append_combinations(int m, int count, std::vector<QueryIndex>* out) {
  std::vector<int> pos(count);
  for (int i = 0; i < count; ++i) pos[i] = i;
  while (true) {
    QueryIndex y;
    y.bits.assign(m, 0);
    for (int p : pos) y.bits[static_cast<std::size_t>(p)] = 1;
    out->push_back(std::move(y));
    int i = count - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == m - count + i) --i;
    if (i < 0) break;
    ++pos[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < count; ++j) {
      pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

std::uint8_t DecisionList::evaluate(const std::vector<std::uint8_t>& y) const {
  for (const DecisionRule& rule : rules) {
    const std::uint8_t bit = y[static_cast<std::size_t>(rule.variable)];
    if ((bit != 0) != rule.negated) return rule.output;
  }
  return default_output;
}

QueryFamily make_disjunction_family(int k, int m, double gamma,
                                    std::uint64_t max_coords) {
  return assemble(FamilyKind::kDisjunction, k, 0, m, gamma,
                  construct_or_approximant(k, gamma), max_coords);
}

QueryFamily make_r_of_k_family(int r, int k, int m, double gamma,
                               std::uint64_t max_coords) {
  return assemble(FamilyKind::kROfK, k, r, m, gamma,
                  construct_threshold_approximant(r, k, gamma), max_coords);
}

QueryFamily make_decision_list_family(int k, int m, double gamma,
                                      std::uint64_t max_coords) {
  return assemble(FamilyKind::kDecisionList, k, 0, m, gamma,
                  construct_dl_helper(k, gamma), max_coords);
}

void validate_query_index(const FamilyDescriptor& desc, const QueryIndex& y) {
  if (static_cast<int>(y.bits.size()) != desc.m) {
    throw DimensionMismatch("query index has " +
                            std::to_string(y.bits.size()) +
                            " bits, family expects " + std::to_string(desc.m));
  }
  check_bits(y.bits, "query index");
  if (desc.kind != FamilyKind::kDecisionList && popcount(y.bits) > desc.k) {
    throw IndexSetViolation("query index selects " +
                            std::to_string(popcount(y.bits)) +
                            " positions, family allows at most " +
                            std::to_string(desc.k));
  }
}

void validate_row(const FamilyDescriptor& desc, const BitRow& row) {
  if (desc.kind == FamilyKind::kDecisionList) {
    throw InvalidArgument("family expects decision-list rows, got a bit row");
  }
  if (static_cast<int>(row.bits.size()) != desc.m) {
    throw DimensionMismatch("row has " + std::to_string(row.bits.size()) +
                            " bits, family expects " + std::to_string(desc.m));
  }
  check_bits(row.bits, "row");
}

void validate_row(const FamilyDescriptor& desc, const DecisionList& row) {
  if (desc.kind != FamilyKind::kDecisionList) {
    throw InvalidArgument("family expects bit rows, got a decision list");
  }
  if (static_cast<int>(row.rules.size()) > desc.k) {
    throw InvalidArgument("decision list has " +
                          std::to_string(row.rules.size()) +
                          " rules, family allows at most " +
                          std::to_string(desc.k));
  }
  for (const DecisionRule& rule : row.rules) {
    if (rule.variable < 0 || rule.variable >= desc.m) {
      throw InvalidArgument("decision rule references variable " +
                            std::to_string(rule.variable + 1) +
                            ", family has m=" + std::to_string(desc.m));
    }
    if (rule.output > 1) {
      throw InvalidArgument("decision rule outputs must be 0 or 1");
    }
  }
  if (row.default_output > 1) {
    throw InvalidArgument("decision list default output must be 0 or 1");
  }
}

double exact_query(const FamilyDescriptor& desc, const BitRow& row,
                   const QueryIndex& y) {
  validate_row(desc, row);
  validate_query_index(desc, y);
  int selected = 0;
  for (std::size_t j = 0; j < row.bits.size(); ++j) {
    selected += row.bits[j] & y.bits[j];
  }
  const int threshold = desc.kind == FamilyKind::kROfK ? desc.r : 1;
  return selected >= threshold ? 1.0 : 0.0;
}

double exact_query(const FamilyDescriptor& desc, const DecisionList& row,
                   const QueryIndex& y) {
  validate_row(desc, row);
  validate_query_index(desc, y);
  return row.evaluate(y.bits) != 0 ? 1.0 : 0.0;
}

CoefficientVector lift_row(const QueryFamily& family, const BitRow& row) {
  validate_row(family.desc, row);
  std::vector<double> weights(row.bits.size());
  for (std::size_t j = 0; j < row.bits.size(); ++j) {
    weights[j] = static_cast<double>(row.bits[j]);
  }
  return compose_affine(family.univariate.poly, weights, 0.0, family.space);
}

// A list (lit_1 -> b_1, ..., lit_L -> b_L, default b_0) equals
//   sum_i b_i * h(arg_i)  +  b_0 * h(arg_def)
// where h is the helper polynomial with h(k) = 1 and |h| <= gamma/k on
// 0..k-1, and the arguments count how far the evaluation point is from
// firing rule i:
//   arg_i   = sum_{j<i} (1 - lit_j) + lit_i + (k - i)
//   arg_def = sum_{j<=L} (1 - lit_j) + (k - L)
// with rules numbered from 1.  Exactly one argument reaches k, every other
// one lands in 0..k-1, so the sum is within L*gamma/k + gamma/k <= gamma of
// the list's output.
CoefficientVector lift_row(const QueryFamily& family, const DecisionList& row) {
  validate_row(family.desc, row);
  const UnivariatePoly& h = family.univariate.poly;
  const int k = family.desc.k;
  const int num_rules = static_cast<int>(row.rules.size());
  CoefficientVector out(family.space);

  // Running affine form of sum_{j<i} (1 - lit_j) in the index bits.
  std::vector<double> prefix(static_cast<std::size_t>(family.desc.m), 0.0);
  double prefix_constant = 0.0;

  for (int i = 0; i < num_rules; ++i) {
    const DecisionRule& rule = row.rules[i];
    const auto v = static_cast<std::size_t>(rule.variable);
    if (rule.output == 1) {
      std::vector<double> weights = prefix;
      double constant = prefix_constant + static_cast<double>(k - (i + 1));
      if (rule.negated) {
        weights[v] -= 1.0;
        constant += 1.0;
      } else {
        weights[v] += 1.0;
      }
      out += compose_affine(h, weights, constant, family.space);
    }
    if (rule.negated) {
      prefix[v] += 1.0;
    } else {
      prefix[v] -= 1.0;
      prefix_constant += 1.0;
    }
  }

  if (row.default_output == 1) {
    const double constant = prefix_constant + static_cast<double>(k - num_rules);
    out += compose_affine(h, prefix, constant, family.space);
  }
  return out;
}

double certified_norm_bound(FamilyKind kind, const UnivariatePoly& univariate,
                            int k) {
  const double base =
      kind == FamilyKind::kDecisionList ? 2.0 * k : static_cast<double>(k);
  double power = 1.0;
  double bound = 0.0;
  for (double c : univariate.coeffs) {
    bound = std::max(bound, std::abs(c) * power);
    power *= base;
  }
  if (kind == FamilyKind::kDecisionList) bound *= static_cast<double>(k + 1);
  return bound;
}

std::vector<QueryIndex> enumerate_index_set(const FamilyDescriptor& desc,
                                            std::uint64_t cap) {
  const int max_count =
      desc.kind == FamilyKind::kDecisionList ? desc.m : std::min(desc.k, desc.m);
  std::uint64_t total = 0;
  for (int c = 0; c <= max_count; ++c) {
    const std::uint64_t block =
        index_space_size(static_cast<std::uint64_t>(desc.m - c), c, cap);
    if (block > cap || cap - block < total) {
      throw AuditScaleExceeded(
          "index set exceeds " + std::to_string(cap) +
          " queries; use sampling instead of exhaustive enumeration");
    }
    total += block;
  }
  std::vector<QueryIndex> out;
  out.reserve(total);
  for (int c = 0; c <= max_count; ++c) {
    append_combinations(desc.m, c, &out);
  }
  return out;
}

}  // namespace privpoly
