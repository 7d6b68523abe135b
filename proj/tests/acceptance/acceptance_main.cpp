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

// Acceptance gate: one line per criterion, [PASS] or [FAIL], with every
// tolerance pinned in the code below.  The process exits non-zero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "privpoly/approximants.hpp"
#include "privpoly/families.hpp"
#include "privpoly/harness.hpp"
#include "privpoly/io.hpp"
#include "privpoly/sanitizer.hpp"

namespace privpoly {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::vector<BitRow> all_rows(int m) {
  std::vector<BitRow> rows;
  rows.reserve(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    BitRow row;
    row.bits.resize(m);
    for (int j = 0; j < m; ++j) row.bits[j] = (mask >> j) & 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Disjunction accuracy: for every row x over d variables and every
//    admissible query y (|y| <= k), |p_x(y) - OR_y(x)| <= gamma + 1e-9,
//    and p_x(y) == 0 bit-exactly whenever OR_y(x) == 0.
//    Grid: (d,k) in {(4,2),(6,3),(8,4)} x gamma in {0.1, 0.01}.
Outcome criterion_disjunction_accuracy() {
  Outcome result;
  const std::vector<std::pair<int, int>> grid = {{4, 2}, {6, 3}, {8, 4}};
  for (const auto& [d, k] : grid) {
    for (const double gamma : {0.1, 0.01}) {
      const QueryFamily family = make_disjunction_family(k, d, gamma);
      const std::vector<QueryIndex> queries = enumerate_index_set(family.desc);
      double worst = 0.0;
      for (const BitRow& row : all_rows(d)) {
        const CoefficientVector lift = lift_row(family, row);
        for (const QueryIndex& y : queries) {
          const double truth = exact_query(family.desc, row, y);
          const double approx = lift.eval(y.bits);
          worst = std::max(worst, std::abs(approx - truth));
          if (std::abs(approx - truth) > gamma + 1e-9) {
            result.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) +
                        " gamma=" + fmt(gamma) + ": error " +
                        fmt(std::abs(approx - truth)));
          }
          if (truth == 0.0 && approx != 0.0) {
            result.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) +
                        ": false disjunction answered " + fmt(approx) +
                        " instead of exact zero");
          }
        }
        if (!result.pass) break;
      }
      if (!result.pass) return result;
      result.note("d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                  ",g=" + fmt(gamma) + " worst " + fmt(worst));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// 2. r-of-k accuracy over d=6 for every r <= k <= 3 at gamma=0.1, tolerance
//    gamma + 1e-9; r=1 must agree exactly with disjunction semantics; and
//    inclusion-exclusion over exact disjunction answers reconstructs every
//    exact r-of-k answer within 1e-9.
Outcome criterion_r_of_k() {
  Outcome result;
  const int d = 6;
  const double gamma = 0.1;
  for (int k = 1; k <= 3; ++k) {
    for (int r = 1; r <= k; ++r) {
      const QueryFamily family = make_r_of_k_family(r, k, d, gamma);
      const std::vector<QueryIndex> queries = enumerate_index_set(family.desc);
      for (const BitRow& row : all_rows(d)) {
        const CoefficientVector lift = lift_row(family, row);
        for (const QueryIndex& y : queries) {
          const double truth = exact_query(family.desc, row, y);
          if (std::abs(lift.eval(y.bits) - truth) > gamma + 1e-9) {
            result.fail("r=" + std::to_string(r) + " k=" + std::to_string(k) +
                        ": band error " +
                        fmt(std::abs(lift.eval(y.bits) - truth)));
            return result;
          }
        }
      }
    }
  }

  const FamilyDescriptor disj{FamilyKind::kDisjunction, 3, 0, d, gamma, 3, 1.0};
  const FamilyDescriptor rof1{FamilyKind::kROfK, 3, 1, d, gamma, 3, 1.0};
  for (const BitRow& row : all_rows(d)) {
    for (const QueryIndex& y : enumerate_index_set(disj)) {
      if (exact_query(rof1, row, y) != exact_query(disj, row, y)) {
        result.fail("r=1 disagrees with disjunction semantics");
        return result;
      }
    }
  }

  const std::vector<BitRow> db = {
      BitRow{{1, 1, 0, 1, 0, 0}}, BitRow{{0, 1, 1, 1, 0, 1}},
      BitRow{{1, 0, 0, 0, 0, 0}}, BitRow{{1, 1, 1, 1, 1, 1}},
      BitRow{{0, 0, 0, 0, 0, 0}}, BitRow{{0, 1, 0, 0, 1, 0}},
      BitRow{{1, 0, 1, 0, 1, 0}}, BitRow{{0, 0, 1, 1, 0, 1}},
      BitRow{{1, 1, 0, 0, 0, 1}}, BitRow{{0, 1, 1, 0, 1, 1}},
      BitRow{{1, 0, 0, 1, 1, 0}}, BitRow{{1, 1, 1, 0, 0, 0}}};
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int r = 1; r <= k; ++r) {
      worst = std::max(worst, inclusion_exclusion_crosscheck(db, r, k));
    }
  }
  if (worst > 1e-9) {
    result.fail("inclusion-exclusion residual " + fmt(worst));
  } else {
    result.note("inclusion-exclusion residual " + fmt(worst));
  }
  return result;
}

// ---------------------------------------------------------------------------
// 3. Decision lists: every list with at most k=2 rules over m in {3,4}
//    variables, every query point, gamma in {0.2, 0.05}, tolerance
//    gamma + 1e-9.
Outcome criterion_decision_lists() {
  Outcome result;
  for (const int m : {3, 4}) {
    for (const double gamma : {0.2, 0.05}) {
      const QueryFamily family = make_decision_list_family(2, m, gamma);
      const std::vector<QueryIndex> queries = enumerate_index_set(family.desc);

      std::vector<DecisionList> lists;
      std::vector<DecisionRule> rule_pool;
      for (int v = 0; v < m; ++v) {
        for (int neg = 0; neg <= 1; ++neg) {
          for (int out = 0; out <= 1; ++out) {
            rule_pool.push_back(DecisionRule{v, neg != 0,
                                             static_cast<std::uint8_t>(out)});
          }
        }
      }
      for (int def = 0; def <= 1; ++def) {
        DecisionList base;
        base.default_output = static_cast<std::uint8_t>(def);
        lists.push_back(base);
        for (const DecisionRule& first : rule_pool) {
          DecisionList one = base;
          one.rules = {first};
          lists.push_back(one);
          for (const DecisionRule& second : rule_pool) {
            DecisionList two = base;
            two.rules = {first, second};
            lists.push_back(two);
          }
        }
      }

      double worst = 0.0;
      for (const DecisionList& list : lists) {
        const CoefficientVector lift = lift_row(family, list);
        for (const QueryIndex& y : queries) {
          const double err =
              std::abs(lift.eval(y.bits) - exact_query(family.desc, list, y));
          worst = std::max(worst, err);
          if (err > gamma + 1e-9) {
            result.fail("m=" + std::to_string(m) + " gamma=" + fmt(gamma) +
                        ": error " + fmt(err));
            return result;
          }
        }
      }
      result.note("m=" + std::to_string(m) + ",g=" + fmt(gamma) + " over " +
                  std::to_string(lists.size()) + " lists, worst " +
                  fmt(worst));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// 4. Sensitivity: replacing one row of an n=3 database over d=4 never moves
//    any aggregate coordinate by more than 2T/n + 1e-12.  Checked two ways:
//    per-pair lift differences over all 16 x 16 row pairs, and actual
//    aggregate differences over every neighbor pair from a 6-row pool.
Outcome criterion_sensitivity() {
  Outcome result;
  const int d = 4;
  const std::int64_t n = 3;
  std::vector<QueryFamily> families;
  for (int k = 1; k <= 3; ++k) {
    families.push_back(make_disjunction_family(k, d, 0.1));
  }
  families.push_back(make_r_of_k_family(2, 2, d, 0.1));
  families.push_back(make_r_of_k_family(2, 3, d, 0.1));
  families.push_back(make_r_of_k_family(3, 3, d, 0.1));

  const std::vector<BitRow> rows = all_rows(d);
  for (const QueryFamily& family : families) {
    const double bound =
        sensitivity_bound(family.desc.norm_bound, n) + 1e-12;
    std::vector<CoefficientVector> lifts;
    lifts.reserve(rows.size());
    for (const BitRow& row : rows) lifts.push_back(lift_row(family, row));

    double worst = 0.0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = 0; b < rows.size(); ++b) {
        for (std::size_t c = 0; c < lifts[a].values.size(); ++c) {
          const double diff =
              std::abs(lifts[a].values[c] - lifts[b].values[c]) /
              static_cast<double>(n);
          worst = std::max(worst, diff);
        }
      }
    }
    if (worst > bound) {
      result.fail("k=" + std::to_string(family.desc.k) +
                  " r=" + std::to_string(family.desc.r) + ": lift diff " +
                  fmt(worst) + " > " + fmt(bound));
      return result;
    }

    const std::vector<BitRow> pool = {rows[0], rows[1], rows[3],
                                      rows[7],  rows[10], rows[15]};
    double agg_worst = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = 0; j < pool.size(); ++j) {
        for (std::size_t l = 0; l < pool.size(); ++l) {
          const std::vector<BitRow> db = {pool[i], pool[j], pool[l]};
          const CoefficientVector base = aggregate(family, db);
          for (int position = 0; position < 3; ++position) {
            for (std::size_t replacement = 0; replacement < pool.size();
                 ++replacement) {
              std::vector<BitRow> neighbor = db;
              neighbor[position] = pool[replacement];
              const CoefficientVector other = aggregate(family, neighbor);
              for (std::size_t c = 0; c < base.values.size(); ++c) {
                agg_worst = std::max(
                    agg_worst, std::abs(base.values[c] - other.values[c]));
              }
            }
          }
        }
      }
    }
    if (agg_worst > bound) {
      result.fail("aggregate neighbor diff " + fmt(agg_worst) + " > " +
                  fmt(bound));
      return result;
    }
    result.note("k=" + std::to_string(family.desc.k) +
                (family.desc.r ? ",r=" + std::to_string(family.desc.r) : "") +
                " max " + fmt(std::max(worst, agg_worst)) + " <= " +
                fmt(bound));
  }
  return result;
}

// ---------------------------------------------------------------------------
// 5. Norm certification: the exhaustively measured coefficient norm over
//    every possible row stays within the family's declared bound T for all
//    families over d=5 (and all decision lists with <= 2 rules, m=4).
Outcome criterion_norm_certification() {
  Outcome result;
  const int d = 5;
  for (int k = 1; k <= 4; ++k) {
    const QueryFamily family = make_disjunction_family(k, d, 0.1);
    const double measured = certify_norm(family);
    if (measured > family.desc.norm_bound + 1e-12) {
      result.fail("disj k=" + std::to_string(k) + ": measured " +
                  fmt(measured) + " > bound " + fmt(family.desc.norm_bound));
    }
  }
  for (int k = 2; k <= 4; ++k) {
    for (int r = 2; r <= k; ++r) {
      const QueryFamily family = make_r_of_k_family(r, k, d, 0.1);
      const double measured = certify_norm(family);
      if (measured > family.desc.norm_bound + 1e-12) {
        result.fail("rofk r=" + std::to_string(r) + " k=" + std::to_string(k) +
                    ": measured " + fmt(measured) + " > bound " +
                    fmt(family.desc.norm_bound));
      }
    }
  }
  const QueryFamily dl = make_decision_list_family(2, 4, 0.2);
  const double measured = certify_norm(dl);
  if (measured > dl.desc.norm_bound + 1e-12) {
    result.fail("declist: measured " + fmt(measured) + " > bound " +
                fmt(dl.desc.norm_bound));
  } else {
    result.note("declist measured " + fmt(measured) + " <= bound " +
                fmt(dl.desc.norm_bound));
  }
  return result;
}

// ---------------------------------------------------------------------------
// 6. Noise law: closed-form scales match pinned oracle values; the Laplace
//    sampler's mean absolute deviation over 1e5 seeded draws is within 3%
//    of the scale; infinite epsilon yields exactly zero noise.
Outcome criterion_noise_law() {
  Outcome result;
  const double pure = noise_scale(PrivacyBudget{0.5, 0.0}, 10, 2.0);
  if (std::abs(pure - 40.0) > 1e-12) {
    result.fail("pure scale " + fmt(pure) + " != 40");
  }
  const double approx = noise_scale(PrivacyBudget{2.0, 0.01}, 4, 1.0);
  if (std::abs(approx - 6.4378980788680416) > 1e-12) {
    result.fail("approx scale " + fmt(approx) + " != 6.43789807886804");
  }
  if (noise_scale(PrivacyBudget{kInf, 0.0}, 10, 2.0) != 0.0) {
    result.fail("infinite epsilon must give zero scale");
  }

  LaplaceStream stream(20260814);
  const double scale = 1.75;
  double sum_abs = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) sum_abs += std::abs(stream.next(scale));
  const double mad = sum_abs / draws;
  if (std::abs(mad - scale) > 0.03 * scale) {
    result.fail("MAD " + fmt(mad) + " deviates more than 3% from " +
                fmt(scale));
  } else {
    result.note("MAD " + fmt(mad) + " vs scale " + fmt(scale));
  }
  return result;
}

std::vector<BitRow> synthetic_database(int m, std::int64_t n) {
  std::mt19937_64 engine(99);
  std::vector<BitRow> rows;
  rows.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) {
    BitRow row;
    row.bits.resize(m);
    for (int j = 0; j < m; ++j) row.bits[j] = engine() & 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Monte Carlo pass rate of fresh releases against the exact answers at the
// planned database size.
Outcome monte_carlo_accuracy(const PrivacyBudget& budget, double alpha,
                             double beta, int runs, double min_rate) {
  Outcome result;
  const int m = 6;
  const int k = 2;
  const QueryFamily family = make_disjunction_family(k, m, 0.05);
  const std::int64_t n = min_database_size(family.desc, budget, alpha, beta);
  const std::vector<BitRow> rows = synthetic_database(m, n);
  const CoefficientVector agg = aggregate(family, rows);

  std::vector<std::pair<QueryIndex, double>> truths =
      exact_answers(family.desc, rows);
  int passes = 0;
  double worst_seen = 0.0;
  for (int run = 0; run < runs; ++run) {
    const Summary summary = perturb_aggregate(
        family, agg, n, budget, 52000 + static_cast<std::uint64_t>(run));
    double worst = 0.0;
    for (const auto& [y, truth] : truths) {
      worst = std::max(worst, std::abs(summary.coeffs.eval(y.bits) - truth));
    }
    worst_seen = std::max(worst_seen, worst);
    if (worst <= alpha) ++passes;
  }
  const double rate = static_cast<double>(passes) / runs;
  result.note("n=" + std::to_string(n) + ", pass rate " + fmt(rate) +
              ", worst " + fmt(worst_seen));
  if (rate < min_rate) {
    result.fail("pass rate " + fmt(rate) + " below " + fmt(min_rate));
  }
  return result;
}

// ---------------------------------------------------------------------------
// 7. Pure-epsilon end-to-end accuracy: d=6, k=2, gamma=0.05, alpha=0.1,
//    beta=0.1, eps=1, n = planned minimum; at least 85% of 200 seeded
//    releases answer every query within alpha.
Outcome criterion_accuracy_pure() {
  return monte_carlo_accuracy(PrivacyBudget{1.0, 0.0}, 0.1, 0.1, 200, 0.85);
}

// ---------------------------------------------------------------------------
// 8. Approximate-DP variant: same experiment with delta=1e-6; the noise
//    scale must also be strictly below the pure-epsilon scale once the
//    coordinate count is large (N=165 at d=8, k=3) and larger where the
//    pure route wins (N=28 at d=6, k=2).
Outcome criterion_accuracy_approx() {
  Outcome result = monte_carlo_accuracy(PrivacyBudget{1.0, 1e-6}, 0.1, 0.1,
                                        200, 0.85);
  const double sens = 2.0;
  const double pure_165 = noise_scale(PrivacyBudget{1.0, 0.0}, 165, sens);
  const double approx_165 = noise_scale(PrivacyBudget{1.0, 1e-6}, 165, sens);
  if (!(approx_165 < pure_165)) {
    result.fail("approx scale " + fmt(approx_165) +
                " not below pure scale " + fmt(pure_165) + " at N=165");
  }
  const double pure_28 = noise_scale(PrivacyBudget{1.0, 0.0}, 28, sens);
  const double approx_28 = noise_scale(PrivacyBudget{1.0, 1e-6}, 28, sens);
  result.note("N=165: " + fmt(approx_165) + " < " + fmt(pure_165) +
              "; N=28: " + fmt(approx_28) + " vs " + fmt(pure_28));
  return result;
}

// ---------------------------------------------------------------------------
// 9. Reproducibility: equal seeds give byte-identical serialized summaries
//    for both row types, and parse/serialize round-trips are bitwise exact.
Outcome criterion_reproducibility() {
  Outcome result;
  const QueryFamily family = make_disjunction_family(2, 5, 0.1);
  const std::vector<BitRow> rows = synthetic_database(5, 500);
  const PrivacyBudget budget{1.0, 0.0};
  const std::string a = serialize_summary(sanitize(family, rows, budget, 7));
  const std::string b = serialize_summary(sanitize(family, rows, budget, 7));
  if (a != b) result.fail("seeded bit-row releases differ");
  const std::string reparsed = serialize_summary(parse_summary(a));
  if (reparsed != a) result.fail("round-trip changed the summary bytes");

  const QueryFamily dl_family = make_decision_list_family(2, 3, 0.2);
  std::vector<DecisionList> lists(40);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    lists[i].rules = {DecisionRule{static_cast<int>(i) % 3, i % 2 == 0, 1}};
    lists[i].default_output = static_cast<std::uint8_t>(i % 2);
  }
  const std::string da =
      serialize_summary(sanitize(dl_family, lists, budget, 11));
  const std::string db =
      serialize_summary(sanitize(dl_family, lists, budget, 11));
  if (da != db) result.fail("seeded decision-list releases differ");
  if (serialize_summary(parse_summary(da)) != da) {
    result.fail("decision-list round-trip changed bytes");
  }
  if (result.pass) result.note("summaries byte-stable across seeds and IO");
  return result;
}

// ---------------------------------------------------------------------------
// 10. Explicit threshold construction: the closed-form path either verifies
//     its bands (exactly and in double precision) or reports failure while
//     the LP route still meets the same contract.  Both arms must occur on
//     the pinned cases.
Outcome criterion_explicit_threshold() {
  Outcome result;

  const ExplicitThresholdResult interp = construct_threshold_explicit(2, 12, 0.1);
  if (!interp.verified) {
    result.fail("(r=2,k=12) interpolation fallback did not verify");
  }

  const ExplicitThresholdResult product = construct_threshold_explicit(1, 8, 0.3);
  if (!product.verified) {
    result.fail("(r=1,k=8,gamma=0.3) product construction did not verify");
  } else {
    result.note("(1,8,g=0.3) verified at degree " +
                std::to_string(product.approximant.poly.degree()));
  }

  const ExplicitThresholdResult hard = construct_threshold_explicit(1, 8, 0.1);
  if (hard.verified) {
    result.note("(1,8,g=0.1) unexpectedly verified at degree " +
                std::to_string(hard.approximant.poly.degree()));
  } else {
    // Honest failure arm: the report must say why, and the LP route must
    // still deliver the contract.
    if (hard.detail.find("failed") == std::string::npos) {
      result.fail("failure detail missing");
    }
    const UnivariateApproximant lp = construct_threshold_approximant(1, 8, 0.1);
    double worst = 0.0;
    for (int x = 0; x <= 8; ++x) {
      const double target = x >= 1 ? 1.0 : 0.0;
      worst = std::max(worst,
                       std::abs(lp.poly(static_cast<double>(x)) - target));
    }
    if (worst > 0.1 + 1e-9) {
      result.fail("LP fallback violates the band contract: " + fmt(worst));
    } else {
      result.note("(1,8,g=0.1) explicit path reported failure, LP achieves " +
                  fmt(worst));
    }
  }
  return result;
}

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace privpoly

int main() {
  using privpoly::Criterion;
  using privpoly::Outcome;

  const std::vector<Criterion> criteria = {
      {"1. disjunction accuracy (d<=8, k<=4, gamma in {0.1,0.01}, tol "
       "gamma+1e-9, exact zeros)",
       privpoly::criterion_disjunction_accuracy},
      {"2. r-of-k accuracy, r=1 equivalence, inclusion-exclusion <= 1e-9",
       privpoly::criterion_r_of_k},
      {"3. decision lists exhaustive (k=2, m in {3,4}, gamma in {0.2,0.05})",
       privpoly::criterion_decision_lists},
      {"4. replacement sensitivity <= 2T/n + 1e-12 (n=3, d=4, all neighbor "
       "pairs)",
       privpoly::criterion_sensitivity},
      {"5. certified norm bound dominates exhaustive row norms (d=5)",
       privpoly::criterion_norm_certification},
      {"6. noise law: pinned scale oracles and 3% Laplace MAD over 1e5 draws",
       privpoly::criterion_noise_law},
      {"7. pure-eps accuracy at planned n (200 runs, >=85% within alpha=0.1)",
       privpoly::criterion_accuracy_pure},
      {"8. (eps,delta) accuracy at planned n and strict scale win at N=165",
       privpoly::criterion_accuracy_approx},
      {"9. byte-identical seeded releases and bitwise IO round-trips",
       privpoly::criterion_reproducibility},
      {"10. explicit threshold: verified bands or honest failure with LP "
       "green",
       privpoly::criterion_explicit_threshold},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %s (%.1fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.name.c_str(), seconds,
                outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures,
                criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
