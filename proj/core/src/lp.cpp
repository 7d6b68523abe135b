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

#include "privpoly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "privpoly/errors.hpp"

namespace privpoly {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-10;
constexpr double kPhaseOneTol = 1e-7;

// Minimal dense two-phase simplex for min c^T x, A x = b, x >= 0.
// Dantzig pricing with a switch to Bland's rule if iterations pile up.
class DenseSimplex {
 public:
  enum class Status { kOptimal, kInfeasible, kStalled };

  DenseSimplex(std::vector<std::vector<double>> a, std::vector<double> b,
               std::vector<double> cost)
      : a_(std::move(a)), b_(std::move(b)), cost_(std::move(cost)) {
    rows_ = a_.size();
    cols_ = rows_ == 0 ? 0 : a_[0].size();
  }

  Status solve() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        for (double& v : a_[i]) v = -v;
      }
    }
    // Append one artificial per row; they form the starting basis.
    tab_.assign(rows_, std::vector<double>(cols_ + rows_ + 1, 0.0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy(a_[i].begin(), a_[i].end(), tab_[i].begin());
      tab_[i][cols_ + i] = 1.0;
      tab_[i].back() = b_[i];
      basis_[i] = cols_ + i;
    }

    std::vector<double> phase1_cost(cols_ + rows_, 0.0);
    for (std::size_t j = cols_; j < cols_ + rows_; ++j) phase1_cost[j] = 1.0;
    Status s = run(phase1_cost, /*allow_artificials=*/true);
    if (s != Status::kOptimal) return s;
    if (objective(phase1_cost) > kPhaseOneTol) return Status::kInfeasible;
    drive_out_artificials();

    std::vector<double> phase2_cost(cols_ + rows_, 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2_cost.begin());
    return run(phase2_cost, /*allow_artificials=*/false);
  }

  std::vector<double> solution() const {
    std::vector<double> x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) x[basis_[i]] = tab_[i].back();
    }
    return x;
  }

 private:
  double objective(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      v += cost[basis_[i]] * tab_[i].back();
    }
    return v;
  }

  void reduced_costs(const std::vector<double>& cost, bool allow_artificials,
                     std::vector<double>* rc) const {
    const std::size_t limit = allow_artificials ? cols_ + rows_ : cols_;
    rc->assign(limit, 0.0);
    for (std::size_t j = 0; j < limit; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        z += cost[basis_[i]] * tab_[i][j];
      }
      (*rc)[j] = cost[j] - z;
    }
  }

  Status run(const std::vector<double>& cost, bool allow_artificials) {
    const std::size_t max_iters = 2000 + 60 * (rows_ + cols_);
    std::vector<double> rc;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
      const bool bland = iter > max_iters / 2;
      reduced_costs(cost, allow_artificials, &rc);

      std::size_t enter = rc.size();
      double best = -kReducedCostTol;
      for (std::size_t j = 0; j < rc.size(); ++j) {
        if (!allow_artificials && j >= cols_) break;
        if (rc[j] < best) {
          enter = j;
          best = rc[j];
          if (bland) break;
        }
      }
      if (enter == rc.size()) return Status::kOptimal;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double p = tab_[i][enter];
        if (p <= kPivotTol) continue;
        const double ratio = tab_[i].back() / p;
        bool better = leave == rows_;
        if (!better) {
          better = ratio < best_ratio - 1e-12 ||
                   (ratio < best_ratio + 1e-12 &&
                    (bland ? basis_[i] < basis_[leave] : p > best_pivot));
        }
        if (better) {
          leave = i;
          best_ratio = ratio;
          best_pivot = p;
        }
      }
      if (leave == rows_) return Status::kStalled;  // unbounded direction
      pivot(leave, enter);
    }
    return Status::kStalled;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = tab_[row][col];
    for (double& v : tab_[row]) v /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < tab_[i].size(); ++j) {
        tab_[i][j] -= f * tab_[row][j];
      }
      tab_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      std::size_t col = cols_;
      double best = 1e-9;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (std::abs(tab_[i][j]) > best) {
          best = std::abs(tab_[i][j]);
          col = j;
        }
      }
      // A row with no usable structural entry is redundant; its artificial
      // stays basic at zero and is barred from re-entering.
      if (col < cols_) pivot(i, col);
    }
  }

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

// Basis choice for the fit variables.
enum class FitBasis { kMonomial, kChebyshev };

double basis_value(FitBasis basis, int i, double x, double x_scale) {
  if (basis == FitBasis::kMonomial) return std::pow(x, i);
  // Shifted Chebyshev on [0, x_scale], evaluated by the value recurrence.
  const double u = x_scale > 0 ? 2.0 * x / x_scale - 1.0 : x;
  double prev = 1.0;
  if (i == 0) return prev;
  double cur = u;
  for (int z = 2; z <= i; ++z) {
    const double next = 2.0 * u * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

struct BasisSolve {
  bool solved = false;
  bool infeasible = false;
  UnivariatePoly poly;  // monomial form
  double objective = 0.0;
};

BasisSolve solve_in_basis(const LpFeasibilityProblem& pr, FitBasis basis,
                          double x_scale) {
  const int n = pr.degree + 1;
  const std::size_t num_eq = pr.equalities.size();
  const std::size_t num_bands = pr.bands.size();
  BasisSolve result;

  // --- Eliminate the equality system by Gauss-Jordan with column pivoting.
  std::vector<std::vector<double>> eq(num_eq, std::vector<double>(n + 1, 0.0));
  for (std::size_t q = 0; q < num_eq; ++q) {
    for (int i = 0; i < n; ++i) {
      eq[q][i] = basis_value(basis, i, pr.equalities[q].x, x_scale);
    }
    eq[q][n] = pr.equalities[q].value;
  }
  std::vector<int> pinned_col;   // per eliminated row
  std::vector<bool> is_pinned(n, false);
  std::vector<std::size_t> live_rows;
  for (std::size_t q = 0; q < num_eq; ++q) {
    int piv = -1;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!is_pinned[i] && std::abs(eq[q][i]) > best) {
        best = std::abs(eq[q][i]);
        piv = i;
      }
    }
    if (piv < 0 || best < 1e-12) {
      if (std::abs(eq[q][n]) > 1e-8) {
        result.infeasible = true;
        return result;
      }
      continue;  // redundant equality
    }
    const double p = eq[q][piv];
    for (double& v : eq[q]) v /= p;
    for (std::size_t q2 = 0; q2 < num_eq; ++q2) {
      if (q2 == q) continue;
      const double f = eq[q2][piv];
      if (f == 0.0) continue;
      for (int i = 0; i <= n; ++i) eq[q2][i] -= f * eq[q][i];
    }
    is_pinned[piv] = true;
    pinned_col.push_back(piv);
    live_rows.push_back(q);
  }

  std::vector<int> free_cols;
  for (int i = 0; i < n; ++i) {
    if (!is_pinned[i]) free_cols.push_back(i);
  }
  const std::size_t nf = free_cols.size();

  // Band rows over the free coefficients.  With c_p pinned to
  // rhs_p - sum_f eq[p][f] c_f, the polynomial at x becomes
  // offset(x) + sum_f psi_f(x) c_f.
  std::vector<std::vector<double>> psi(num_bands, std::vector<double>(nf, 0.0));
  std::vector<double> offset(num_bands, 0.0);
  for (std::size_t j = 0; j < num_bands; ++j) {
    const double x = pr.bands[j].x;
    for (std::size_t pi = 0; pi < pinned_col.size(); ++pi) {
      offset[j] += basis_value(basis, pinned_col[pi], x, x_scale) *
                   eq[live_rows[pi]][n];
    }
    for (std::size_t f = 0; f < nf; ++f) {
      double v = basis_value(basis, free_cols[f], x, x_scale);
      for (std::size_t pi = 0; pi < pinned_col.size(); ++pi) {
        v -= basis_value(basis, pinned_col[pi], x, x_scale) *
             eq[live_rows[pi]][free_cols[f]];
      }
      psi[j][f] = v;
    }
  }

  std::vector<double> coeff(n, 0.0);
  for (std::size_t pi = 0; pi < pinned_col.size(); ++pi) {
    coeff[pinned_col[pi]] = eq[live_rows[pi]][n];
  }

  if (num_bands > 0) {
    // Column equilibration keeps the tableau entries O(1).
    std::vector<double> scale(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t j = 0; j < num_bands; ++j) {
        scale[f] = std::max(scale[f], std::abs(psi[j][f]));
      }
    }
    std::vector<std::size_t> lp_cols;  // free columns that touch any band
    for (std::size_t f = 0; f < nf; ++f) {
      if (scale[f] > 1e-300) lp_cols.push_back(f);
    }
    const std::size_t nl = lp_cols.size();

    // Structural variables: split coefficients, then e, then one surplus
    // and one slack per band.
    const std::size_t var_e = 2 * nl;
    const std::size_t num_vars = 2 * nl + 1 + 2 * num_bands;
    std::vector<std::vector<double>> a(2 * num_bands,
                                       std::vector<double>(num_vars, 0.0));
    std::vector<double> b(2 * num_bands, 0.0);
    for (std::size_t j = 0; j < num_bands; ++j) {
      for (std::size_t l = 0; l < nl; ++l) {
        const double v = psi[j][lp_cols[l]] / scale[lp_cols[l]];
        a[2 * j][2 * l] = v;
        a[2 * j][2 * l + 1] = -v;
        a[2 * j + 1][2 * l] = v;
        a[2 * j + 1][2 * l + 1] = -v;
      }
      a[2 * j][var_e] = 1.0;                       // p(x) + e - s = lower
      a[2 * j][var_e + 1 + 2 * j] = -1.0;
      b[2 * j] = pr.bands[j].lower - offset[j];
      a[2 * j + 1][var_e] = -1.0;                  // p(x) - e + u = upper
      a[2 * j + 1][var_e + 1 + 2 * j + 1] = 1.0;
      b[2 * j + 1] = pr.bands[j].upper - offset[j];
    }
    std::vector<double> cost(num_vars, 0.0);
    cost[var_e] = 1.0;

    DenseSimplex simplex(std::move(a), std::move(b), std::move(cost));
    const DenseSimplex::Status st = simplex.solve();
    if (st == DenseSimplex::Status::kInfeasible) {
      result.infeasible = true;
      return result;
    }
    if (st != DenseSimplex::Status::kOptimal) return result;  // not solved
    const std::vector<double> x = simplex.solution();
    result.objective = x[var_e];
    for (std::size_t l = 0; l < nl; ++l) {
      const double cf = (x[2 * l] - x[2 * l + 1]) / scale[lp_cols[l]];
      coeff[free_cols[lp_cols[l]]] = cf;
    }
    // Back-substitute into the pinned coefficients.
    for (std::size_t pi = 0; pi < pinned_col.size(); ++pi) {
      double v = eq[live_rows[pi]][n];
      for (std::size_t f = 0; f < nf; ++f) {
        v -= eq[live_rows[pi]][free_cols[f]] * coeff[free_cols[f]];
      }
      coeff[pinned_col[pi]] = v;
    }
  }

  // Convert to monomial form.
  if (basis == FitBasis::kMonomial) {
    result.poly.coeffs = coeff;
  } else {
    result.poly.coeffs.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (coeff[i] == 0.0) continue;
      const UnivariatePoly ti = compose_univariate_affine(
          chebyshev_polynomial(i), -1.0, x_scale > 0 ? 2.0 / x_scale : 1.0);
      for (std::size_t j = 0; j < ti.coeffs.size(); ++j) {
        result.poly.coeffs[j] += coeff[i] * ti.coeffs[j];
      }
    }
  }
  result.solved = true;
  return result;
}

double measure_achieved(const UnivariatePoly& poly,
                        const LpFeasibilityProblem& pr) {
  double worst = 0.0;
  for (const BandConstraint& band : pr.bands) {
    const double v = poly(band.x);
    worst = std::max(worst, band.lower - v);
    worst = std::max(worst, v - band.upper);
  }
  return std::max(worst, 0.0);
}

}  // namespace

MinimaxFit fit_minimax(const LpFeasibilityProblem& problem) {
  if (problem.degree < 0) {
    throw InvalidArgument("fit degree must be non-negative");
  }
  for (const BandConstraint& band : problem.bands) {
    if (band.lower > band.upper) {
      throw InvalidArgument("band constraint has lower > upper");
    }
  }

  double x_scale = 0.0;
  for (const BandConstraint& band : problem.bands) {
    x_scale = std::max(x_scale, std::abs(band.x));
  }
  for (const EqualityConstraint& e : problem.equalities) {
    x_scale = std::max(x_scale, std::abs(e.x));
  }

  BasisSolve mono = solve_in_basis(problem, FitBasis::kMonomial, x_scale);
  if (mono.infeasible) {
    throw LpInfeasible("equality constraints are infeasible");
  }
  if (mono.solved) {
    const double achieved = measure_achieved(mono.poly, problem);
    if (achieved <= mono.objective * 1.5 + 1e-7) {
      return {mono.poly, achieved, mono.objective, false};
    }
  }

  BasisSolve cheb = solve_in_basis(problem, FitBasis::kChebyshev, x_scale);
  if (cheb.infeasible) {
    throw LpInfeasible("equality constraints are infeasible");
  }
  if (!cheb.solved) {
    throw LpIllConditioned(
        "minimax fit is ill-conditioned at degree " +
        std::to_string(problem.degree) +
        "; both the monomial-basis and shifted-Chebyshev-basis solves "
        "broke down");
  }
  return {cheb.poly, measure_achieved(cheb.poly, problem), cheb.objective,
          true};
}

}  // namespace privpoly
