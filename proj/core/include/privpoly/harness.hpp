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

#ifndef PRIVPOLY_HARNESS_HPP_
#define PRIVPOLY_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "privpoly/families.hpp"
#include "privpoly/sanitizer.hpp"

namespace privpoly {

// The audit tools in this header read the raw database to compare released
// answers against ground truth.  Their outputs reveal exact query answers
// and are NOT privacy-preserving; use them only on test data or inside a
// trusted curator.

struct AuditOptions {
  double beta = 0.1;
  // When set, audit that many uniformly sampled index-set queries instead
  // of the full set (deterministic in sample_seed).
  std::optional<std::uint64_t> sample;
  std::uint64_t sample_seed = 1;
  // Exhaustive audits refuse index sets larger than this.
  std::uint64_t max_queries = 1'000'000;
};

struct AuditReport {
  FamilyDescriptor family;
  std::int64_t n = 0;
  PrivacyBudget budget;
  double beta = 0.0;
  std::int64_t queries_audited = 0;
  double max_abs_error = 0.0;
  QueryIndex worst_query;
  // Bound the released summary is held against: gamma for noise-free
  // releases, accuracy_bound(...) otherwise.
  double alpha_bound = 0.0;
  bool sampled = false;
  bool pass = false;
  double runtime_ms = 0.0;
};

// Ground-truth mean answer for every admissible query, in index-set order.
std::vector<std::pair<QueryIndex, double>> exact_answers(
    const FamilyDescriptor& desc, const std::vector<BitRow>& rows,
    std::uint64_t cap = 1'000'000);
std::vector<std::pair<QueryIndex, double>> exact_answers(
    const FamilyDescriptor& desc, const std::vector<DecisionList>& rows,
    std::uint64_t cap = 1'000'000);

// Compares the summary's answers against ground truth over the index set
// (or a uniform sample of it) and checks the worst-case accuracy bound.
AuditReport audit(const Summary& summary, const std::vector<BitRow>& rows,
                  const AuditOptions& options = {});
AuditReport audit(const Summary& summary,
                  const std::vector<DecisionList>& rows,
                  const AuditOptions& options = {});

// Largest lifted-coefficient magnitude over every possible row of the
// family, by exhaustive enumeration (2^m bit rows, or all decision lists
// with at most k rules).  Throws AuditScaleExceeded past `cap` rows.
double certify_norm(const QueryFamily& family, std::uint64_t cap = 1'048'576);

// Rebuilds every r-of-k exact answer from exact disjunction answers by
// inclusion-exclusion over the query's support and returns the largest
// absolute discrepancy.
double inclusion_exclusion_crosscheck(const std::vector<BitRow>& rows, int r,
                                      int k);

}  // namespace privpoly

#endif  // PRIVPOLY_HARNESS_HPP_
