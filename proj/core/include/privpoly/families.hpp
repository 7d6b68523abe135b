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

#ifndef PRIVPOLY_FAMILIES_HPP_
#define PRIVPOLY_FAMILIES_HPP_

#include <cstdint>
#include <vector>

#include "privpoly/approximants.hpp"
#include "privpoly/monomial_space.hpp"
#include "privpoly/polynomial.hpp"

namespace privpoly {

// Which query class a family answers over m-bit query indices:
//   kDisjunction: OR of the row bits selected by the index (|y| <= k)
//   kROfK:        1 when at least r selected row bits are set (|y| <= k)
//   kDecisionList: rows are decision lists with at most k rules over m
//                  variables, evaluated on the index bits (any y)
enum class FamilyKind { kDisjunction, kROfK, kDecisionList };

struct BitRow {
  std::vector<std::uint8_t> bits;
};

struct QueryIndex {
  std::vector<std::uint8_t> bits;

  bool operator==(const QueryIndex&) const = default;
};

struct DecisionRule {
  int variable = 0;  // 0-based
  bool negated = false;
  std::uint8_t output = 0;
};

struct DecisionList {
  std::vector<DecisionRule> rules;
  std::uint8_t default_output = 0;

  // Output of the first rule whose literal is satisfied, else the default.
  std::uint8_t evaluate(const std::vector<std::uint8_t>& y) const;
};

// Everything an evaluator or auditor needs to know about a family; the
// released summaries carry exactly these fields.
struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::kDisjunction;
  int k = 0;
  int r = 0;  // kROfK only
  int m = 0;
  double gamma = 0.0;     // target uniform error
  int t = 0;              // lifted total degree
  double norm_bound = 0;  // certified bound T on lifted coefficient norms
};

struct QueryFamily {
  FamilyDescriptor desc;
  UnivariateApproximant univariate;
  MonomialIndexSpace space;
};

QueryFamily make_disjunction_family(
    int k, int m, double gamma,
    std::uint64_t max_coords = MonomialIndexSpace::kDefaultMaxSize);
QueryFamily make_r_of_k_family(
    int r, int k, int m, double gamma,
    std::uint64_t max_coords = MonomialIndexSpace::kDefaultMaxSize);
QueryFamily make_decision_list_family(
    int k, int m, double gamma,
    std::uint64_t max_coords = MonomialIndexSpace::kDefaultMaxSize);

// Throws IndexSetViolation when y is outside the family's index set and
// DimensionMismatch / InvalidArgument on arity or non-binary entries.
void validate_query_index(const FamilyDescriptor& desc, const QueryIndex& y);
void validate_row(const FamilyDescriptor& desc, const BitRow& row);
void validate_row(const FamilyDescriptor& desc, const DecisionList& row);

// True query value on one row (0.0 or 1.0).
double exact_query(const FamilyDescriptor& desc, const BitRow& row,
                   const QueryIndex& y);
double exact_query(const FamilyDescriptor& desc, const DecisionList& row,
                   const QueryIndex& y);

// Coefficient vector of the row's query polynomial: evaluating it at an
// admissible y approximates exact_query within gamma, and the coefficient
// norm stays within the family's certified bound.
CoefficientVector lift_row(const QueryFamily& family, const BitRow& row);
CoefficientVector lift_row(const QueryFamily& family, const DecisionList& row);

// Data-independent bound on the max |coefficient| of any lifted row.
double certified_norm_bound(FamilyKind kind, const UnivariatePoly& univariate,
                            int k);

// Every admissible query index, by popcount then lexicographic position
// order.  Throws AuditScaleExceeded when the set is larger than `cap`.
std::vector<QueryIndex> enumerate_index_set(const FamilyDescriptor& desc,
                                            std::uint64_t cap = 1'000'000);

}  // namespace privpoly

#endif  // PRIVPOLY_FAMILIES_HPP_
