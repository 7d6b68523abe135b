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

#include "privpoly/sanitizer.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

std::string row_key(const BitRow& row) {
  std::string key;
  key.reserve(row.bits.size());
  for (std::uint8_t b : row.bits) key.push_back(b ? '1' : '0');
  return key;
}

std::string row_key(const DecisionList& row) {
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

// Pairwise (tree) summation in a fixed index order keeps the result
// independent of how rows happen to be grouped in memory and loses far
// less precision than a running sum over millions of rows.
template <typename RowT>
CoefficientVector aggregate_impl(const QueryFamily& family,
                                 const std::vector<RowT>& rows) {
  if (rows.empty()) {
    throw InvalidArgument("database must contain at least one row");
  }
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<CoefficientVector> lifts;
  std::vector<std::uint32_t> lift_of_row(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [it, inserted] =
        ids.emplace(row_key(rows[i]), static_cast<std::uint32_t>(lifts.size()));
    if (inserted) lifts.push_back(lift_row(family, rows[i]));
    lift_of_row[i] = it->second;
  }

  const std::size_t width = family.space.size();
  std::function<std::vector<double>(std::size_t, std::size_t)> sum_range =
      [&](std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return lifts[lift_of_row[lo]].values;
        const std::size_t mid = lo + (hi - lo) / 2;
        std::vector<double> left = sum_range(lo, mid);
        const std::vector<double> right = sum_range(mid, hi);
        for (std::size_t j = 0; j < width; ++j) left[j] += right[j];
        return left;
      };

  CoefficientVector out(family.space);
  out.values = sum_range(0, rows.size());
  out.scale(1.0 / static_cast<double>(rows.size()));
  return out;
}

template <typename RowT>
Summary sanitize_impl(const QueryFamily& family, const std::vector<RowT>& rows,
                      const PrivacyBudget& budget,
                      std::optional<std::uint64_t> seed) {
  return perturb_aggregate(family, aggregate_impl(family, rows),
                           static_cast<std::int64_t>(rows.size()), budget,
                           seed);
}

double checked_log_inverse(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in (0, 1)");
  }
  return std::log(1.0 / p);
}

}  // namespace

void validate_budget(const PrivacyBudget& budget) {
  if (std::isnan(budget.epsilon) || budget.epsilon <= 0.0) {
    throw InvalidArgument("epsilon must be positive (or infinite for a "
                          "noise-free release)");
  }
  if (std::isnan(budget.delta) || budget.delta < 0.0 || budget.delta >= 1.0) {
    throw InvalidArgument("delta must lie in [0, 1)");
  }
}

CoefficientVector aggregate(const QueryFamily& family,
                            const std::vector<BitRow>& rows) {
  return aggregate_impl(family, rows);
}

CoefficientVector aggregate(const QueryFamily& family,
                            const std::vector<DecisionList>& rows) {
  return aggregate_impl(family, rows);
}

double sensitivity_bound(double norm_bound, std::int64_t n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(norm_bound > 0.0)) {
    throw InvalidArgument("coefficient norm bound must be positive");
  }
  return 2.0 * norm_bound / static_cast<double>(n);
}

double noise_scale(const PrivacyBudget& budget, std::uint64_t num_coords,
                   double sensitivity) {
  validate_budget(budget);
  if (num_coords < 1) throw InvalidArgument("num_coords must be at least 1");
  if (!(sensitivity >= 0.0)) {
    throw InvalidArgument("sensitivity must be non-negative");
  }
  if (std::isinf(budget.epsilon)) return 0.0;
  const double coords = static_cast<double>(num_coords);
  if (budget.delta == 0.0) {
    return sensitivity * coords / budget.epsilon;
  }
  return 3.0 * sensitivity * std::sqrt(coords * std::log(1.0 / budget.delta)) /
         budget.epsilon;
}

double LaplaceStream::next(double scale) {
  // 53 uniform bits, offset by half a step so u is never 0 or 1; the
  // inverse CDF then never evaluates log at 0.
  const std::uint64_t bits = engine_();
  const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  const double centered = u - 0.5;
  const double magnitude = -std::log1p(-2.0 * std::abs(centered));
  return (centered < 0.0 ? -scale : scale) * magnitude;
}

Summary perturb_aggregate(const QueryFamily& family, CoefficientVector agg,
                          std::int64_t n, const PrivacyBudget& budget,
                          std::optional<std::uint64_t> seed) {
  validate_budget(budget);
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (agg.space.size() != family.space.size() ||
      agg.space.num_variables() != family.space.num_variables() ||
      agg.space.max_degree() != family.space.max_degree()) {
    throw DimensionMismatch(
        "aggregate is indexed by a different monomial space than the family");
  }

  const double sensitivity = sensitivity_bound(family.desc.norm_bound, n);
  const double scale = noise_scale(budget, family.space.size(), sensitivity);

  Summary summary{family.desc, n, budget, scale, std::move(agg), seed};
  if (scale > 0.0) {
    std::uint64_t used_seed;
    if (seed.has_value()) {
      used_seed = *seed;
    } else {
      std::random_device rd;
      used_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    LaplaceStream noise(used_seed);
    for (double& value : summary.coeffs.values) {
      value += noise.next(scale);
    }
  }
  return summary;
}

Summary sanitize(const QueryFamily& family, const std::vector<BitRow>& rows,
                 const PrivacyBudget& budget,
                 std::optional<std::uint64_t> seed) {
  return sanitize_impl(family, rows, budget, seed);
}

Summary sanitize(const QueryFamily& family,
                 const std::vector<DecisionList>& rows,
                 const PrivacyBudget& budget,
                 std::optional<std::uint64_t> seed) {
  return sanitize_impl(family, rows, budget, seed);
}

double answer(const Summary& summary, const QueryIndex& y, bool clamp) {
  validate_query_index(summary.family, y);
  const double value = summary.coeffs.eval(y.bits);
  if (!clamp) return value;
  return std::min(1.0, std::max(0.0, value));
}

double accuracy_bound(const FamilyDescriptor& desc, std::int64_t n,
                      const PrivacyBudget& budget, double beta) {
  validate_budget(budget);
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("beta must lie in (0, 1)");
  }
  if (std::isinf(budget.epsilon)) return desc.gamma;
  const double coords = static_cast<double>(
      index_space_size(desc.m, desc.t, std::numeric_limits<std::uint64_t>::max() - 1));
  const double tail = std::log(coords / beta);
  const double t_bound = desc.norm_bound;
  double noise_term;
  if (budget.delta == 0.0) {
    noise_term = 4.0 * t_bound * coords * coords * tail /
                 (budget.epsilon * static_cast<double>(n));
  } else {
    noise_term = 12.0 * t_bound * coords *
                 std::sqrt(coords * checked_log_inverse(budget.delta, "delta")) *
                 tail / (budget.epsilon * static_cast<double>(n));
  }
  return desc.gamma + noise_term;
}

std::int64_t min_database_size(const FamilyDescriptor& desc,
                               const PrivacyBudget& budget, double alpha,
                               double beta) {
  validate_budget(budget);
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("beta must lie in (0, 1)");
  }
  if (!(alpha > desc.gamma)) {
    throw InvalidArgument(
        "alpha must exceed the approximation floor gamma=" +
        std::to_string(desc.gamma) + "; tighten gamma or relax alpha");
  }
  if (std::isinf(budget.epsilon)) return 1;
  const double coords = static_cast<double>(
      index_space_size(desc.m, desc.t, std::numeric_limits<std::uint64_t>::max() - 1));
  const double tail = std::log(coords / beta);
  double numerator;
  if (budget.delta == 0.0) {
    numerator = 4.0 * desc.norm_bound * coords * coords * tail;
  } else {
    numerator = 12.0 * desc.norm_bound * coords *
                std::sqrt(coords * checked_log_inverse(budget.delta, "delta")) *
                tail;
  }
  const double n = std::ceil(numerator / (budget.epsilon * (alpha - desc.gamma)));
  if (!(n >= 1.0) || n > 9.0e18) {
    throw InvalidArgument("required database size is out of range");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

}  // namespace privpoly
