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

#ifndef FRAMECRAFT_LP_HPP_
#define FRAMECRAFT_LP_HPP_

#include <cstddef>
#include <vector>

namespace framecraft::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Constraint {
  std::vector<double> coeffs;  // one per variable
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// maximize objective . x  subject to constraints, x >= 0.
// Free variables are not supported; shift or split them before building.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  explicit Problem(std::size_t n) : num_vars(n), objective(n, 0.0) {}
  void Add(std::vector<double> coeffs, Sense sense, double rhs) {
    constraints.push_back({std::move(coeffs), sense, rhs});
  }
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase tableau simplex with row scaling and lowest-index entering. Intended for
// the small programs in this library (tens of variables and rows).
Solution Solve(const Problem& problem, double tol = 1e-9);

}  // namespace framecraft::lp

#endif  // FRAMECRAFT_LP_HPP_
