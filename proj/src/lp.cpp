// Copyright 2026 The Framecraft Authors
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

#include "framecraft/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framecraft/error.hpp"

namespace framecraft::lp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr double kRatioTieTol = 1e-12;
constexpr int kMaxIterations = 100000;

// Extended precision absorbs the round-off of long degenerate pivot chains.
using Real = long double;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  Real& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  Real& rhs(std::size_t r) { return at(r, cols_); }
  // The objective row sits below the constraint rows.
  Real& obj(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t pr, std::size_t pc) {
    const Real inv = 1.0L / at(pr, pc);
    nonzero_.clear();
    for (std::size_t c = 0; c <= cols_; ++c) {
      if (at(pr, c) == 0.0L) continue;
      at(pr, c) *= inv;
      nonzero_.push_back(c);
    }
    at(pr, pc) = 1.0L;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const Real f = at(r, pc);
      if (f == 0.0L) continue;
      for (std::size_t c : nonzero_) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0L;
    }
    basis_[pr] = pc;
  }

  // Rewrites the objective row so that basic columns have zero reduced cost.
  void Price(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= cols_; ++c) obj(c) = c < cols_ ? -cost[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Real f = obj(basis_[r]);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) obj(c) -= f * at(r, c);
    }
  }

  // Lowest-index entering column. Returns false when the problem is unbounded.
  // A basic artificial sits at zero and leaves on any nonzero entry of the entering column.
  bool Optimize(const std::vector<char>& allowed, const std::vector<char>& is_art, double tol) {
    for (int it = 0; it < kMaxIterations; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && obj(c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      // Minimum ratio, then the largest pivot among near-ties, then Bland's order.
      std::size_t leave = rows_;
      Real best = std::numeric_limits<Real>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const Real coef = at(r, enter);
        if (!allowed[basis_[r]] && is_art[basis_[r]] && std::abs(coef) > kPivotTol) {
          leave = r;
          best = -1.0;
          break;
        }
        if (coef <= kPivotTol) continue;
        best = std::min(best, std::max<Real>(0.0, rhs(r)) / coef);
      }
      if (best >= 0.0) {
        for (std::size_t r = 0; r < rows_; ++r) {
          const Real coef = at(r, enter);
          if (coef <= kPivotTol) continue;
          if (std::max<Real>(0.0, rhs(r)) / coef > best + kRatioTieTol) continue;
          if (leave == rows_ || coef > at(leave, enter) * (1.0 + 1e-12) ||
              (coef >= at(leave, enter) * (1.0 - 1e-12) && basis_[r] < basis_[leave])) {
            leave = r;
          }
        }
      }
      if (leave == rows_) return false;
      Pivot(leave, enter);
    }
    throw LpError("simplex iteration limit reached");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Real> a_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
};

}  // namespace

Solution Solve(const Problem& problem, double tol) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  if (problem.objective.size() != n) throw LpError("objective length mismatch");

  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  std::vector<Sense> senses(m);
  std::vector<double> sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = problem.constraints[i];
    if (con.coeffs.size() != n) throw LpError("constraint length mismatch");
    Sense s = con.sense;
    if (con.rhs < 0) {
      sign[i] = -1.0;
      if (s == Sense::kLessEqual) {
        s = Sense::kGreaterEqual;
      } else if (s == Sense::kGreaterEqual) {
        s = Sense::kLessEqual;
      }
    }
    senses[i] = s;
    if (s != Sense::kEqual) ++num_slack;
    if (s != Sense::kLessEqual) ++num_art;
  }

  const std::size_t cols = n + num_slack + num_art;
  Tableau t(m, cols);
  std::vector<char> is_art(cols, 0);
  std::size_t next_slack = n;
  std::size_t next_art = n + num_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = problem.constraints[i];
    double scale = 0.0;
    for (double c : con.coeffs) scale = std::max(scale, std::abs(c));
    scale = scale > 0.0 ? sign[i] / scale : sign[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = scale * con.coeffs[j];
    t.rhs(i) = scale * con.rhs;
    switch (senses[i]) {
      case Sense::kLessEqual:
        t.at(i, next_slack) = 1.0;
        t.basis()[i] = next_slack++;
        break;
      case Sense::kGreaterEqual:
        t.at(i, next_slack++) = -1.0;
        t.at(i, next_art) = 1.0;
        is_art[next_art] = 1;
        t.basis()[i] = next_art++;
        break;
      case Sense::kEqual:
        t.at(i, next_art) = 1.0;
        is_art[next_art] = 1;
        t.basis()[i] = next_art++;
        break;
    }
  }

  std::vector<char> allowed(cols, 1);
  if (num_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_art[c]) phase1[c] = -1.0;
    }
    t.Price(phase1);
    t.Optimize(allowed, is_art, tol);
    if (t.obj(cols) < -tol * static_cast<double>(std::max<std::size_t>(m, 1))) {
      return {Status::kInfeasible, 0.0, {}};
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_art[t.basis()[r]]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!is_art[c] && std::abs(t.at(r, c)) > 1e-9) {
          t.Pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_art[c]) allowed[c] = 0;
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
  t.Price(cost);
  if (!t.Optimize(allowed, is_art, tol)) return {Status::kUnbounded, 0.0, {}};

  Solution sol;
  sol.status = Status::kOptimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b < n) sol.x[b] = static_cast<double>(std::max<Real>(0.0, t.rhs(r)));
  }
  for (const auto& con : problem.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += con.coeffs[j] * sol.x[j];
    const bool ok = con.sense == Sense::kLessEqual      ? lhs <= con.rhs + kFeasTol
                    : con.sense == Sense::kGreaterEqual ? lhs >= con.rhs - kFeasTol
                                                        : std::abs(lhs - con.rhs) <= kFeasTol;
    if (!ok) throw LpError("simplex lost feasibility to round-off");
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += problem.objective[j] * sol.x[j];
  sol.objective = value;
  return sol;
}

}  // namespace framecraft::lp
