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

#include "privpoly/approximants.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

constexpr double kDegreeSearchSlack = 1e-12;

void validate_common(int k, double gamma) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw InvalidArgument("gamma must lie in (0, 1)");
  }
}

double measure_bands(const UnivariatePoly& poly,
                     const LpFeasibilityProblem& pr) {
  double worst = 0.0;
  for (const BandConstraint& band : pr.bands) {
    const double v = poly(band.x);
    worst = std::max(worst, std::max(band.lower - v, v - band.upper));
  }
  return std::max(worst, 0.0);
}

// Runs the incremental degree search against a family of problems sharing
// the same constraint targets, degree 1 through k.
UnivariateApproximant degree_search(
    ApproximantKind kind, int k, int r, double target,
    const std::function<LpFeasibilityProblem(int degree)>& make_problem) {
  std::optional<LpIllConditioned> last_failure;
  for (int degree = 1; degree <= k; ++degree) {
    const LpFeasibilityProblem pr = make_problem(degree);
    MinimaxFit fit;
    try {
      fit = fit_minimax(pr);
    } catch (const LpIllConditioned& e) {
      last_failure = e;
      continue;
    }
    if (fit.achieved_error > target + kDegreeSearchSlack) continue;

    UnivariateApproximant out;
    out.kind = kind;
    out.k = k;
    out.r = r;
    out.poly = fit.poly;
    if (kind == ApproximantKind::kOr) {
      // The fit pins p(0) = 0; clear any dust on the constant term so
      // that lifted evaluations of empty intersections are exactly zero.
      out.poly.coeffs[0] = 0.0;
    } else if (kind == ApproximantKind::kDlHelper) {
      out.poly.coeffs[0] += 1.0 - out.poly(k);
    }
    out.gamma = measure_bands(out.poly, pr);
    if (out.gamma > target + kDegreeSearchSlack) continue;
    out.coeff_norm = out.poly.max_abs_coeff();
    return out;
  }
  if (last_failure) throw *last_failure;
  throw LpIllConditioned(
      "degree search exhausted degree k without meeting the band target");
}

}  // namespace

UnivariateApproximant construct_or_approximant(int k, double gamma) {
  validate_common(k, gamma);
  return degree_search(ApproximantKind::kOr, k, 0, gamma, [k](int degree) {
    LpFeasibilityProblem pr;
    pr.degree = degree;
    pr.equalities.push_back({0.0, 0.0});
    for (int x = 1; x <= k; ++x) {
      pr.bands.push_back({static_cast<double>(x), 1.0, 1.0});
    }
    return pr;
  });
}

UnivariateApproximant construct_threshold_approximant(int r, int k,
                                                      double gamma) {
  validate_common(k, gamma);
  if (r < 1 || r > k) throw InvalidArgument("r must lie in [1, k]");
  return degree_search(
      ApproximantKind::kThreshold, k, r, gamma, [r, k](int degree) {
        LpFeasibilityProblem pr;
        pr.degree = degree;
        for (int x = 0; x <= k; ++x) {
          const double target = x >= r ? 1.0 : 0.0;
          pr.bands.push_back({static_cast<double>(x), target, target});
        }
        return pr;
      });
}

UnivariateApproximant construct_dl_helper(int k, double gamma) {
  validate_common(k, gamma);
  const double target = gamma / k;
  return degree_search(
      ApproximantKind::kDlHelper, k, 0, target, [k](int degree) {
        LpFeasibilityProblem pr;
        pr.degree = degree;
        pr.equalities.push_back({static_cast<double>(k), 1.0});
        for (int x = 0; x < k; ++x) {
          pr.bands.push_back({static_cast<double>(x), 0.0, 0.0});
        }
        return pr;
      });
}

}  // namespace privpoly
