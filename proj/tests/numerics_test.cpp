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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "framecraft/error.hpp"
#include "framecraft/lattice.hpp"
#include "framecraft/lp.hpp"
#include "framecraft/sampling.hpp"

namespace framecraft {
namespace {

TEST(Lp, SmallMaximization) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3.
  lp::Problem p(2);
  p.objective = {3, 2};
  p.Add({1, 1}, lp::Sense::kLessEqual, 4);
  p.Add({1, 3}, lp::Sense::kLessEqual, 6);
  p.Add({1, 0}, lp::Sense::kLessEqual, 3);
  const auto s = lp::Solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, 11.0, 1e-9);
  EXPECT_NEAR(s.x[0], 3.0, 1e-9);
  EXPECT_NEAR(s.x[1], 1.0, 1e-9);
}

TEST(Lp, EqualityAndGreaterEqual) {
  // max -x - y  s.t. x + y = 1, x >= 0.25 (as -x <= -0.25 via >=).
  lp::Problem p(2);
  p.objective = {-1, -2};
  p.Add({1, 1}, lp::Sense::kEqual, 1);
  p.Add({1, 0}, lp::Sense::kGreaterEqual, 0.25);
  const auto s = lp::Solve(p);
  ASSERT_EQ(s.status, lp::Status::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-9);
  EXPECT_NEAR(s.x[0], 1.0, 1e-9);
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  lp::Problem inf(1);
  inf.Add({1}, lp::Sense::kLessEqual, 1);
  inf.Add({1}, lp::Sense::kGreaterEqual, 2);
  EXPECT_EQ(lp::Solve(inf).status, lp::Status::kInfeasible);
  lp::Problem unb(1);
  unb.objective = {1};
  EXPECT_EQ(lp::Solve(unb).status, lp::Status::kUnbounded);
}

TEST(Lattice, StarsAndBarsCount) {
  EXPECT_EQ(LatticeSize(3, 4), 15u);
  EXPECT_EQ(EnumerateLattice(3, 4).size(), 15u);
  EXPECT_EQ(LatticeSize(4, 60), 39711u);
  EXPECT_EQ(LatticeSize(1, 7), 1u);
  EXPECT_EQ(LatticeSize(200, 200) , UINT64_MAX);
}

TEST(Lattice, OrderAndSums) {
  const auto pts = EnumerateLattice(3, 2);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts.front(), (std::vector<std::uint32_t>{2, 0, 0}));
  EXPECT_EQ(pts.back(), (std::vector<std::uint32_t>{0, 0, 2}));
  for (const auto& p : pts) EXPECT_EQ(std::accumulate(p.begin(), p.end(), 0u), 2u);
  const auto b = LatticeBelief({1, 0, 1}, 2);
  EXPECT_DOUBLE_EQ(b[0], 0.5);
  EXPECT_THROW(EnumerateLattice(5, 100, 1000), ValidationError);
}

TEST(Evaluate, ParallelMatchesSerial) {
  const PointEvaluator f = [](std::size_t i) {
    return i % 7 == 3 ? std::nan("") : std::sin(static_cast<double>(i));
  };
  const auto serial = EvaluateSerial(5000, f);
  const auto parallel = EvaluateParallel(5000, f, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    if (std::isnan(serial[i])) {
      EXPECT_TRUE(std::isnan(parallel[i]));
    } else {
      EXPECT_EQ(serial[i], parallel[i]);
    }
  }
  EXPECT_EQ(DeterministicArgmax(serial), DeterministicArgmax(parallel));
}

TEST(Evaluate, ParallelRethrows) {
  const PointEvaluator f = [](std::size_t i) -> double {
    if (i == 77) throw std::runtime_error("boom");
    return 0.0;
  };
  EXPECT_THROW(EvaluateParallel(200, f, 4), std::runtime_error);
}

TEST(DeterministicArgmax, TiesAndNaN) {
  EXPECT_EQ(DeterministicArgmax({1.0, 3.0, 3.0, 2.0}), 1u);
  EXPECT_EQ(DeterministicArgmax({std::nan(""), 0.5, std::nan("")}), 1u);
  EXPECT_EQ(DeterministicArgmax({std::nan("")}), 1u);
}

TEST(Sampler, Deterministic) {
  Sampler a(42);
  Sampler b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Uniform(), b.Uniform());
  Sampler c(43);
  EXPECT_NE(Sampler(42).Uniform(), c.Uniform());
}

TEST(Sampler, SimplexAndBall) {
  Sampler rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto s = rng.Simplex(4);
    EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), 1.0, 1e-12);
    for (double x : s) EXPECT_GE(x, 0.0);
    const auto b = rng.L1Ball(4, 0.3);
    double l1 = 0.0;
    for (double x : b) l1 += std::abs(x);
    EXPECT_LE(l1, 0.3 + 1e-12);
  }
}

TEST(ProjectToSimplex, KnownCases) {
  const auto inside = ProjectToSimplex({0.2, 0.3, 0.5});
  EXPECT_NEAR(inside[0], 0.2, 1e-15);
  const auto p = ProjectToSimplex({1.0, 1.0, -1.0});
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
  EXPECT_EQ(p[2], 0.0);
  const auto q = ProjectToSimplex({2.0, 0.0});
  EXPECT_NEAR(q[0], 1.0, 1e-15);
}

}  // namespace
}  // namespace framecraft
