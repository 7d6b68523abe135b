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

#ifndef PRIVPOLY_SANITIZER_HPP_
#define PRIVPOLY_SANITIZER_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "privpoly/families.hpp"
#include "privpoly/monomial_space.hpp"

namespace privpoly {

// epsilon may be +infinity (no noise); delta == 0 selects the pure
// epsilon mechanism, 0 < delta < 1 the approximate one.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;
};

void validate_budget(const PrivacyBudget& budget);

// The released object: family metadata plus one noisy coefficient vector.
// Everything here is safe to publish; the raw rows never leave sanitize().
struct Summary {
  FamilyDescriptor family;
  std::int64_t n = 0;
  PrivacyBudget budget;
  double noise_scale = 0.0;
  CoefficientVector coeffs;
  std::optional<std::uint64_t> seed;
};

// Mean of the lifted rows (exact, non-private intermediate).
CoefficientVector aggregate(const QueryFamily& family,
                            const std::vector<BitRow>& rows);
CoefficientVector aggregate(const QueryFamily& family,
                            const std::vector<DecisionList>& rows);

// Worst-case change of any aggregate coordinate when one row is replaced.
double sensitivity_bound(double norm_bound, std::int64_t n);

// Per-coordinate Laplace scale for the given budget; num_coords is the
// number of released coordinates and sensitivity the per-coordinate bound.
double noise_scale(const PrivacyBudget& budget, std::uint64_t num_coords,
                   double sensitivity);

// Deterministic Laplace sampler (inverse CDF over mt19937_64 draws), so a
// seeded release is reproducible bit for bit.
class LaplaceStream {
 public:
  explicit LaplaceStream(std::uint64_t seed) : engine_(seed) {}

  double next(double scale);

 private:
  std::mt19937_64 engine_;
};

// Adds calibrated noise to an already-computed aggregate.  Splitting this
// from sanitize() lets repeated-release experiments reuse one aggregate.
Summary perturb_aggregate(const QueryFamily& family, CoefficientVector agg,
                          std::int64_t n, const PrivacyBudget& budget,
                          std::optional<std::uint64_t> seed = std::nullopt);

Summary sanitize(const QueryFamily& family, const std::vector<BitRow>& rows,
                 const PrivacyBudget& budget,
                 std::optional<std::uint64_t> seed = std::nullopt);
Summary sanitize(const QueryFamily& family,
                 const std::vector<DecisionList>& rows,
                 const PrivacyBudget& budget,
                 std::optional<std::uint64_t> seed = std::nullopt);

// Evaluates the summary polynomial at a query index; with clamp the result
// is cut to [0, 1].  Throws IndexSetViolation outside the family's set.
double answer(const Summary& summary, const QueryIndex& y, bool clamp = false);

// Error bound alpha that holds for every admissible query at once with
// probability at least 1 - beta over the noise.
double accuracy_bound(const FamilyDescriptor& desc, std::int64_t n,
                      const PrivacyBudget& budget, double beta);

// Smallest n whose accuracy_bound stays within alpha; throws
// InvalidArgument when alpha does not exceed the approximation floor gamma.
std::int64_t min_database_size(const FamilyDescriptor& desc,
                               const PrivacyBudget& budget, double alpha,
                               double beta);

}  // namespace privpoly

#endif  // PRIVPOLY_SANITIZER_HPP_
