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

#include <algorithm>
#include <cmath>

#include "framecraft/core.hpp"
#include "framecraft/error.hpp"
#include "framecraft/presets.hpp"
#include "test_util.hpp"

namespace framecraft {
namespace {

using testing::RandomInstance;
using testing::RandomInteriorBelief;
using testing::RandomScheme;

Instance TwoByTwo(Matrix u, Matrix v, std::vector<double> prior = {0.5, 0.5}) {
  return Instance({"w0", "w1"}, {"a0", "a1"}, Belief(std::move(prior)), std::move(u),
                  std::move(v));
}

TEST(Belief, RejectsOffSimplexInput) {
  EXPECT_THROW(Belief({0.5, 0.6}), ValidationError);
  EXPECT_THROW(Belief({-0.1, 1.1}), ValidationError);
  EXPECT_THROW(Belief(std::vector<double>{}), ValidationError);
  EXPECT_NO_THROW(Belief({0.3, 0.7}));
}

TEST(SignalingScheme, RejectsNonStochasticRows) {
  EXPECT_THROW(SignalingScheme({"s"}, Matrix::FromRows({{0.9}})), ValidationError);
  EXPECT_THROW(SignalingScheme({"s", "t"}, Matrix::FromRows({{1.2, -0.2}})), ValidationError);
}

TEST(NormalizeUtilities, MinMaxEndpoints) {
  const Matrix raw_u = Matrix::FromRows({{-0.5, 0}, {0.75, 1}});
  const Matrix raw_v = Matrix::FromRows({{0, 1}, {1, 0}});
  const auto n = NormalizeUtilities(raw_u, raw_v);
  EXPECT_DOUBLE_EQ(n.sender(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(n.sender(0, 0), 0.0);
  EXPECT_NEAR(n.sender(0, 1), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(n.record.sender_scale, 1.5);
  EXPECT_DOUBLE_EQ(n.record.sender_offset, -0.5);
}

TEST(NormalizeUtilities, HenryReceiverMatrix) {
  const Matrix raw_v = Matrix::FromRows({{-1, 0, 0, 0}, {0.75, -0.25, 0.25, -3}});
  const auto n = NormalizeUtilities(raw_v, raw_v);
  EXPECT_DOUBLE_EQ(n.receiver(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(n.receiver(1, 3), 0.0);
  EXPECT_NEAR(n.receiver(0, 0), 2.0 / 3.75, 1e-15);
  EXPECT_DOUBLE_EQ(n.record.receiver_scale, 3.75);
}

TEST(NormalizeUtilities, InverseRecoversRaw) {
  const Matrix raw = Matrix::FromRows({{3.0, -7.5, 2.25}, {0.1, 9.0, -1.0}});
  const auto n = NormalizeUtilities(raw, raw);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(n.record.SenderToRaw(n.sender(r, c)), raw(r, c), 1e-12);
      EXPECT_NEAR(n.record.ReceiverToRaw(n.receiver(r, c)), raw(r, c), 1e-12);
    }
  }
}

TEST(NormalizeUtilities, ConstantMatrixMapsToHalf) {
  const Matrix c = Matrix::FromRows({{2, 2}, {2, 2}});
  const auto n = NormalizeUtilities(c, c);
  EXPECT_DOUBLE_EQ(n.sender(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(n.record.sender_scale, 1.0);
  EXPECT_DOUBLE_EQ(n.record.SenderToRaw(0.5), 2.0);
}

TEST(NormalizeUtilities, RejectsNonFinite) {
  const Matrix bad = Matrix::FromRows({{1, NAN}});
  const Matrix ok = Matrix::FromRows({{1, 0}});
  EXPECT_THROW(NormalizeUtilities(bad, ok), ValidationError);
  EXPECT_THROW(NormalizeUtilities(ok, Matrix::FromRows({{INFINITY, 0}})), ValidationError);
}

TEST(NormalizeUtilities, SkippedCellsIgnored) {
  const Matrix u = Matrix::FromRows({{100, 1}, {0, 0.5}});
  const auto n = NormalizeUtilities(u, u, {1, 0, 0, 0});
  EXPECT_DOUBLE_EQ(n.sender(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(n.sender(0, 0), 0.0);
}

TEST(ValidateInstance, ProsecutorPasses) {
  EXPECT_TRUE(ValidateInstance(ProsecutorInstance()).ok());
}

TEST(ValidateInstance, DuplicateReceiverRowsFailInducibility) {
  const auto inst = TwoByTwo(Matrix::FromRows({{0, 1}, {1, 0}}),
                             Matrix::FromRows({{0.2, 0.8}, {0.2, 0.8}}));
  const auto report = ValidateInstance(inst);
  EXPECT_FALSE(report.ok());
  const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                               [](const auto& c) { return c.name == "strict_inducibility"; });
  ASSERT_NE(it, report.checks.end());
  EXPECT_FALSE(it->passed);
  EXPECT_NE(it->detail.find("a0"), std::string::npos);
}

TEST(ValidateInstance, ZeroPriorFailsFullSupport) {
  const auto inst = TwoByTwo(Matrix::FromRows({{0, 1}, {1, 0}}),
                             Matrix::FromRows({{1, 0}, {0, 1}}), {1.0, 0.0});
  const auto report = ValidateInstance(inst);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.checks[0].passed);
  EXPECT_EQ(report.checks[0].name, "full_support_prior");
}

TEST(Posterior, UninformativeSchemeKeepsPrior) {
  const Belief mu({0.2, 0.5, 0.3});
  const auto scheme = SignalingScheme::Uninformative(3, "s");
  const Belief post = Posterior(mu, scheme, std::size_t{0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(post[i], mu[i], 1e-15);
}

TEST(Posterior, ProsecutorSignals) {
  const Belief mu({2.0 / 3.0, 1.0 / 3.0});
  const auto scheme = ProsecutorScheme();
  const Belief acquit = Posterior(mu, scheme, "acquit");
  EXPECT_DOUBLE_EQ(acquit[0], 1.0);
  EXPECT_DOUBLE_EQ(acquit[1], 0.0);
  const Belief convict = Posterior(mu, scheme, "convict");
  EXPECT_NEAR(convict[0], 0.5, 1e-15);
  EXPECT_NEAR(convict[1], 0.5, 1e-15);
}

TEST(Posterior, ZeroProbabilitySignalIsDomainError) {
  const auto scheme = ProsecutorScheme();
  EXPECT_THROW(Posterior(Belief({0.0, 1.0}), scheme, "acquit"), DomainError);
  EXPECT_THROW(Posterior(Belief({0.5, 0.5}), scheme, "unknown"), ValidationError);
}

TEST(BestResponse, PointMassPicksColumnArgmax) {
  const auto inst = Example1Instance();
  EXPECT_EQ(BestResponse(Belief::PointMass(2, 0), inst), 0u);
  EXPECT_EQ(BestResponse(Belief::PointMass(2, 1), inst), 2u);
}

TEST(BestResponse, ProsecutorDominanceAndTieBreak) {
  const auto inst = ProsecutorInstance();
  EXPECT_EQ(BestResponse(Belief({0.8, 0.2}), inst), 0u);
  EXPECT_EQ(BestResponse(Belief({0.5, 0.5}), inst), 1u);
}

TEST(BestResponse, ResidualTiesGoToLowestIndex) {
  const auto inst = TwoByTwo(Matrix::FromRows({{0.5, 0.5}, {0.5, 0.5}}),
                             Matrix::FromRows({{1, 0}, {0, 1}}));
  EXPECT_EQ(BestResponse(Belief({0.5, 0.5}), inst), 0u);
}

TEST(SenderExAnteUtility, UninformativeAtPrior) {
  const auto inst = Example1Instance();
  const auto scheme = SignalingScheme::Uninformative(2, "none");
  const std::size_t a = BestResponse(inst.prior(), inst);
  const double expected = inst.prior()[0] * inst.u(a, 0) + inst.prior()[1] * inst.u(a, 1);
  EXPECT_DOUBLE_EQ(SenderExAnteUtility(inst, inst.prior(), scheme), expected);
}

TEST(SenderExAnteUtility, ProsecutorJump) {
  const auto inst = ProsecutorInstance();
  const auto scheme = ProsecutorScheme();
  EXPECT_DOUBLE_EQ(SenderExAnteUtility(inst, Belief({0.67, 0.33}), scheme), 0.0);
  EXPECT_NEAR(SenderExAnteUtility(inst, Belief({2.0 / 3.0, 1.0 / 3.0}), scheme), 0.665, 1e-12);
}

TEST(SenderExAnteUtility, ZeroReceiverProbabilityFallback) {
  const auto inst = ProsecutorInstance();
  // Receiver is certain of guilt; "acquit" has receiver probability zero.
  const auto direct = ProsecutorScheme();
  const auto profile = ResponseProfile(inst, Belief({0.0, 1.0}), direct);
  EXPECT_EQ(profile[0], 0u);  // direct: the recommendation
  EXPECT_EQ(profile[1], 1u);
  const SignalingScheme relabelled({"x", "y"}, direct.probs());
  const auto fallback = ResponseProfile(inst, Belief({0.0, 1.0}), relabelled);
  EXPECT_EQ(fallback[0], 1u);  // best response to the receiver prior
}

TEST(DirectScheme, ProsecutorAlreadyDirect) {
  const auto inst = ProsecutorInstance();
  const Belief mu({2.0 / 3.0, 1.0 / 3.0});
  const auto direct = DirectScheme(ProsecutorScheme(), mu, inst);
  EXPECT_EQ(direct, ProsecutorScheme());
}

TEST(DirectScheme, MergesSignalsInducingSameAction) {
  const auto inst = ProsecutorInstance();
  const SignalingScheme split({"x", "y", "z"},
                              Matrix::FromRows({{0.3, 0.3, 0.4}, {0.0, 0.0, 1.0}}));
  const Belief mu({0.6, 0.4});
  const auto direct = DirectScheme(split, mu, inst);
  EXPECT_TRUE(IsDirect(direct, inst));
  EXPECT_DOUBLE_EQ(direct(0, 0), 0.6);
  EXPECT_NEAR(SenderExAnteUtility(inst, mu, direct), SenderExAnteUtility(inst, mu, split), 1e-12);
}

TEST(InducibilityMargin, ProsecutorIsOne) {
  const auto m = ComputeInducibilityMargin(ProsecutorInstance());
  EXPECT_NEAR(m.margin, 1.0, 1e-9);
  EXPECT_NEAR(m.inducing_beliefs[0][0], 1.0, 1e-9);
  EXPECT_NEAR(m.inducing_beliefs[1][1], 1.0, 1e-9);
}

TEST(InducibilityMargin, WeaklyDominatedActionHasZeroMargin) {
  const auto inst = TwoByTwo(Matrix::FromRows({{0, 1}, {1, 0}}),
                             Matrix::FromRows({{1, 0.5}, {1, 1}}));
  EXPECT_NEAR(ComputeInducibilityMargin(inst).margin, 0.0, 1e-9);
}

TEST(InducibilityMargin, ExampleOneValue) {
  // Normalized receiver utilities: a1 = [1, 1/11], a2 = [10/11, 4/11], a3 = [0, 8/11].
  // a2 is the binding action; its best margin is 1/11.
  const auto m = ComputeInducibilityMargin(Example1Instance());
  EXPECT_NEAR(m.margin, 1.0 / 11.0, 1e-9);
  EXPECT_GT(m.margin, 0.0);
}

// Properties over random instances.

TEST(Properties, PosteriorLipschitz) {
  Sampler rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.Index(3);
    const double p0 = 0.02 + 0.1 * rng.Uniform() / static_cast<double>(n);
    const Belief mu = RandomInteriorBelief(rng, n, p0);
    const Belief mu2 = RandomInteriorBelief(rng, n, p0);
    const auto scheme = RandomScheme(rng, n, 3);
    const double dist = L1Distance(mu.probs(), mu2.probs());
    for (std::size_t s = 0; s < 3; ++s) {
      double p1 = 0;
      double p2 = 0;
      for (std::size_t w = 0; w < n; ++w) {
        p1 += mu[w] * scheme(w, s);
        p2 += mu2[w] * scheme(w, s);
      }
      if (p1 <= 0.0 || p2 <= 0.0) continue;
      const double d = L1Distance(Posterior(mu, scheme, s).probs(), Posterior(mu2, scheme, s).probs());
      EXPECT_LE(d, 2.0 / p0 * dist + 1e-12);
    }
  }
}

TEST(Properties, BestResponseAffineInvariance) {
  Sampler rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = RandomInstance(100 + trial, 3, 3);
    const double alpha = 0.1 + 5.0 * rng.Uniform();
    const double beta = -3.0 + 6.0 * rng.Uniform();
    Matrix v2 = inst.receiver_utility();
    for (std::size_t a = 0; a < 3; ++a) {
      for (double& x : v2.row(a)) x = alpha * x + beta;
    }
    const Belief mu = RandomInteriorBelief(rng, 3, 0.0);
    std::vector<double> eu1(3, 0.0);
    std::vector<double> eu2(3, 0.0);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t w = 0; w < 3; ++w) {
        eu1[a] += mu[w] * inst.v(a, w);
        eu2[a] += mu[w] * v2(a, w);
      }
    }
    const double m1 = *std::max_element(eu1.begin(), eu1.end());
    const double m2 = *std::max_element(eu2.begin(), eu2.end());
    for (std::size_t a = 0; a < 3; ++a) {
      EXPECT_EQ(eu1[a] >= m1 - 1e-12, eu2[a] >= m2 - 1e-12 * alpha);
    }
    const auto renormalized = Instance::FromRaw(inst.states(), inst.actions(), inst.prior(),
                                                inst.sender_utility(), v2);
    EXPECT_EQ(BestResponse(mu, inst), BestResponse(mu, renormalized));
  }
}

TEST(Properties, DirectSchemePreservesUtility) {
  Sampler rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.Index(3);
    const std::size_t m = 2 + rng.Index(3);
    const auto inst = RandomInstance(500 + trial, n, m);
    const auto scheme = RandomScheme(rng, n, 1 + rng.Index(5));
    const Belief mu = RandomInteriorBelief(rng, n, 0.0);
    const auto direct = DirectScheme(scheme, mu, inst);
    EXPECT_NEAR(SenderExAnteUtility(inst, mu, direct), SenderExAnteUtility(inst, mu, scheme),
                1e-12);
    for (std::size_t w = 0; w < n; ++w) {
      double total = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        EXPECT_GE(direct(w, a), 0.0);
        total += direct(w, a);
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

}  // namespace
}  // namespace framecraft
