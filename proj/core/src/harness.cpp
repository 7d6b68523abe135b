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

#include "privpoly/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <string>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 res = 1;
  for (int i = 1; i <= k; ++i) res = res * (n - k + i) / i;
  return static_cast<std::uint64_t>(res);
}

// Uniform draw from [0, n) using masked rejection, so the sequence depends
// only on the engine and not on the standard library's distribution.
std::uint64_t bounded_draw(std::mt19937_64& engine, std::uint64_t n) {
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  while (true) {
    const std::uint64_t draw = engine() & mask;
    if (draw < n) return draw;
  }
}

// rank-th m-bit index with exactly `count` ones, in lexicographic order of
// the selected positions.
QueryIndex unrank_combination(int m, int count, std::uint64_t rank) {
  QueryIndex y;
  y.bits.assign(static_cast<std::size_t>(m), 0);
  int p = 0;
  for (int slot = 0; slot < count; ++slot) {
    while (true) {
      const std::uint64_t block = binom_u64(m - p - 1, count - slot - 1);
      if (rank < block) {
        y.bits[static_cast<std::size_t>(p)] = 1;
        ++p;
        break;
      }
      rank -= block;
      ++p;
    }
  }
  return y;
}

std::vector<QueryIndex> sample_index_set(const FamilyDescriptor& desc,
                                         std::uint64_t count,
                                         std::uint64_t seed) {
  const int max_count = desc.kind == FamilyKind::kDecisionList
                            ? desc.m
                            : std::min(desc.k, desc.m);
  if (desc.m > 62) {
    throw AuditScaleExceeded("sampled audits support at most 62 variables");
  }
  std::vector<std::uint64_t> cumulative(static_cast<std::size_t>(max_count) + 2,
                                        0);
  for (int c = 0; c <= max_count; ++c) {
    cumulative[static_cast<std::size_t>(c) + 1] =
        cumulative[static_cast<std::size_t>(c)] + binom_u64(desc.m, c);
  }
  const std::uint64_t total = cumulative.back();
  std::mt19937_64 engine(seed);
  std::vector<QueryIndex> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t rank = bounded_draw(engine, total);
    int c = 0;
    while (cumulative[static_cast<std::size_t>(c) + 1] <= rank) ++c;
    out.push_back(unrank_combination(
        desc.m, c, rank - cumulative[static_cast<std::size_t>(c)]));
  }
  return out;
}

std::string row_cache_key(const BitRow& row) {
  std::string key;
  key.reserve(row.bits.size());
  for (std::uint8_t b : row.bits) key.push_back(b ? '1' : '0');
  return key;
}

std::string row_cache_key(const DecisionList& row) {
  std::string key;
  for (const DecisionRule& rule : row.rules) {
    key += std::to_string(rule.variable);
    key.push_back(rule.negated ? 'n' : 'p');
    key.push_back(rule.output ? '1' : '0');
    key.push_back(';');
  }
  key.push_back(row.default_output ? '1' : '0');
  return key;
}

// Distinct rows with multiplicities; databases repeat rows heavily compared
// to the number of possible rows, so audits answer per distinct row.
template <typename RowT>
std::vector<std::pair<const RowT*, std::int64_t>> distinct_rows(
    const std::vector<RowT>& rows) {
  std::map<std::string, std::pair<const RowT*, std::int64_t>> seen;
  for (const RowT& row : rows) {
    auto [it, inserted] = seen.emplace(row_cache_key(row),
                                       std::make_pair(&row, std::int64_t{0}));
    ++it->second.second;
  }
  std::vector<std::pair<const RowT*, std::int64_t>> out;
  out.reserve(seen.size());
  for (auto& [key, entry] : seen) out.push_back(entry);
  return out;
}

template <typename RowT>
double exact_mean(const FamilyDescriptor& desc,
                  const std::vector<std::pair<const RowT*, std::int64_t>>& rows,
                  std::int64_t n, const QueryIndex& y) {
  double weighted = 0.0;
  for (const auto& [row, multiplicity] : rows) {
    weighted += exact_query(desc, *row, y) * static_cast<double>(multiplicity);
  }
  return weighted / static_cast<double>(n);
}

template <typename RowT>
std::vector<std::pair<QueryIndex, double>> exact_answers_impl(
    const FamilyDescriptor& desc, const std::vector<RowT>& rows,
    std::uint64_t cap) {
  if (rows.empty()) {
    throw InvalidArgument("database must contain at least one row");
  }
  const auto distinct = distinct_rows(rows);
  const auto n = static_cast<std::int64_t>(rows.size());
  std::vector<std::pair<QueryIndex, double>> out;
  for (QueryIndex& y : enumerate_index_set(desc, cap)) {
    const double value = exact_mean(desc, distinct, n, y);
    out.emplace_back(std::move(y), value);
  }
  return out;
}

template <typename RowT>
AuditReport audit_impl(const Summary& summary, const std::vector<RowT>& rows,
                       const AuditOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (rows.empty()) {
    throw InvalidArgument("database must contain at least one row");
  }
  if (static_cast<std::int64_t>(rows.size()) != summary.n) {
    throw InvalidArgument("database has " + std::to_string(rows.size()) +
                          " rows but the summary was built from n=" +
                          std::to_string(summary.n));
  }
  if (!(options.beta > 0.0 && options.beta < 1.0)) {
    throw InvalidArgument("beta must lie in (0, 1)");
  }
  const FamilyDescriptor& desc = summary.family;
  for (const RowT& row : rows) validate_row(desc, row);

  std::vector<QueryIndex> queries;
  if (options.sample.has_value()) {
    queries = sample_index_set(desc, *options.sample, options.sample_seed);
  } else {
    queries = enumerate_index_set(desc, options.max_queries);
  }

  const auto distinct = distinct_rows(rows);
  AuditReport report;
  report.family = desc;
  report.n = summary.n;
  report.budget = summary.budget;
  report.beta = options.beta;
  report.queries_audited = static_cast<std::int64_t>(queries.size());
  report.sampled = options.sample.has_value();

  double worst = -1.0;
  for (const QueryIndex& y : queries) {
    const double truth = exact_mean(desc, distinct, summary.n, y);
    const double released = summary.coeffs.eval(y.bits);
    const double err = std::abs(released - truth);
    if (err > worst) {
      worst = err;
      report.worst_query = y;
    }
  }
  report.max_abs_error = std::max(0.0, worst);

  if (std::isinf(summary.budget.epsilon)) {
    report.alpha_bound = desc.gamma;
    report.pass = report.max_abs_error <= desc.gamma + 1e-9;
  } else {
    report.alpha_bound =
        accuracy_bound(desc, summary.n, summary.budget, options.beta);
    report.pass = report.max_abs_error <= report.alpha_bound + 1e-12;
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

void enumerate_decision_lists(const QueryFamily& family, int rules_left,
                              DecisionList* current, std::uint64_t cap,
                              std::uint64_t* visited, double* worst) {
  for (std::uint8_t def = 0; def <= 1; ++def) {
    current->default_output = def;
    if (++*visited > cap) {
      throw AuditScaleExceeded(
          "decision-list enumeration exceeds " + std::to_string(cap) +
          " rows");
    }
    *worst = std::max(*worst, lift_row(family, *current).norm_inf());
  }
  if (rules_left == 0) return;
  for (int v = 0; v < family.desc.m; ++v) {
    for (int negated = 0; negated <= 1; ++negated) {
      for (std::uint8_t output = 0; output <= 1; ++output) {
        current->rules.push_back(DecisionRule{v, negated != 0, output});
        enumerate_decision_lists(family, rules_left - 1, current, cap, visited,
                                 worst);
        current->rules.pop_back();
      }
    }
  }
}

}  // namespace

std::vector<std::pair<QueryIndex, double>> exact_answers(
    const FamilyDescriptor& desc, const std::vector<BitRow>& rows,
    std::uint64_t cap) {
  return exact_answers_impl(desc, rows, cap);
}

std::vector<std::pair<QueryIndex, double>> exact_answers(
    const FamilyDescriptor& desc, const std::vector<DecisionList>& rows,
    std::uint64_t cap) {
  return exact_answers_impl(desc, rows, cap);
}

AuditReport audit(const Summary& summary, const std::vector<BitRow>& rows,
                  const AuditOptions& options) {
  return audit_impl(summary, rows, options);
}

AuditReport audit(const Summary& summary, const std::vector<DecisionList>& rows,
                  const AuditOptions& options) {
  return audit_impl(summary, rows, options);
}

double certify_norm(const QueryFamily& family, std::uint64_t cap) {
  double worst = 0.0;
  if (family.desc.kind == FamilyKind::kDecisionList) {
    DecisionList current;
    std::uint64_t visited = 0;
    enumerate_decision_lists(family, family.desc.k, &current, cap, &visited,
                             &worst);
    return worst;
  }
  if (family.desc.m >= 63 ||
      (std::uint64_t{1} << family.desc.m) > cap) {
    throw AuditScaleExceeded("bit-row enumeration exceeds " +
                             std::to_string(cap) + " rows");
  }
  BitRow row;
  row.bits.assign(static_cast<std::size_t>(family.desc.m), 0);
  const std::uint64_t total = std::uint64_t{1} << family.desc.m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int j = 0; j < family.desc.m; ++j) {
      row.bits[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    }
    worst = std::max(worst, lift_row(family, row).norm_inf());
  }
  return worst;
}

double inclusion_exclusion_crosscheck(const std::vector<BitRow>& rows, int r,
                                      int k) {
  if (rows.empty()) {
    throw InvalidArgument("database must contain at least one row");
  }
  if (r < 1 || r > k) throw InvalidArgument("need 1 <= r <= k");
  const int m = static_cast<int>(rows[0].bits.size());
  FamilyDescriptor rofk{FamilyKind::kROfK, k, r, m, 0.0, 1, 1.0};
  FamilyDescriptor disj{FamilyKind::kDisjunction, k, 0, m, 0.0, 1, 1.0};

  const auto distinct = distinct_rows(rows);
  const auto n = static_cast<std::int64_t>(rows.size());
  double worst = 0.0;
  for (const QueryIndex& y : enumerate_index_set(rofk)) {
    std::vector<int> support;
    for (int j = 0; j < m; ++j) {
      if (y.bits[static_cast<std::size_t>(j)]) support.push_back(j);
    }
    const int s = static_cast<int>(support.size());
    const double direct = exact_mean(rofk, distinct, n, y);

    // 1{at least r of s selected bits set} expanded over subsets T of the
    // support:  sum_u a_u * sum_{|T|=u} (1 - OR_T), where
    // a_u = sum_{w=0}^{min(u, s-r)} (-1)^(u-w) C(u, w).
    double recon = 0.0;
    for (int u = 0; u <= s; ++u) {
      double a_u = 0.0;
      for (int w = 0; w <= std::min(u, s - r); ++w) {
        const double sign = (u - w) % 2 == 0 ? 1.0 : -1.0;
        a_u += sign * static_cast<double>(binom_u64(u, w));
      }
      if (a_u == 0.0) continue;

      double subset_sum = 0.0;
      std::vector<int> pick(static_cast<std::size_t>(u));
      for (int i = 0; i < u; ++i) pick[static_cast<std::size_t>(i)] = i;
      while (true) {
        QueryIndex sub;
        sub.bits.assign(static_cast<std::size_t>(m), 0);
        for (int idx : pick) {
          sub.bits[static_cast<std::size_t>(support[static_cast<std::size_t>(
              idx)])] = 1;
        }
        subset_sum += 1.0 - exact_mean(disj, distinct, n, sub);
        int i = u - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == s - u + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < u; ++j) {
          pick[static_cast<std::size_t>(j)] =
              pick[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
      recon += a_u * subset_sum;
    }
    worst = std::max(worst, std::abs(direct - recon));
  }
  return worst;
}

}  // namespace privpoly
