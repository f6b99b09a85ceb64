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

#include <chrono>
#include <thread>

#include "framecraft/error.hpp"
#include "framecraft/framing_only.hpp"
#include "framecraft/presets.hpp"
#include "test_util.hpp"

namespace framecraft {
namespace {

using testing::RandomInstance;
using testing::RandomInteriorBelief;
using testing::RandomScheme;

// Table lookups with a framing-dependent delay, to shuffle completion order.
class SlowOracle : public BeliefOracle {
 public:
  explicit SlowOracle(std::map<std::string, Belief> table) : table_(std::move(table)) {}
  OracleResponse Query(const Framing& framing, const std::string& context) const override {
    std::this_thread::sleep_for(std::chrono::milliseconds(Fnv1a64(framing.id) % 7));
    return table_.Query(framing, context);
  }

 private:
  TableOracle table_;
};

TEST(FixedSchemeUtility, ProsecutorValues) {
  const auto inst = ProsecutorInstance();
  const auto scheme = ProsecutorScheme();
  EXPECT_DOUBLE_EQ(FixedSchemeUtility(inst, scheme, Belief({0.67, 0.33})), 0.0);
  EXPECT_NEAR(FixedSchemeUtility(inst, scheme, Belief({2.0 / 3.0, 1.0 / 3.0})), 0.665, 1e-12);
}

TEST(FixedSchemeUtility, UninformativeSchemeFlatWhereResponseFixed) {
  const auto inst = ProsecutorInstance();
  const auto scheme = SignalingScheme::Uninformative(2, "none");
  // The receiver acquits for every belief with P(innocent) > 0.5.
  const double ref = FixedSchemeUtility(inst, scheme, Belief({0.9, 0.1}));
  for (int i = 0; i <= 40; ++i) {
    const double p = 0.51 + 0.49 * i / 40.0;
    EXPECT_DOUBLE_EQ(FixedSchemeUtility(inst, scheme, Belief({p, 1.0 - p})), ref);
  }
}

TEST(DiscreteFramingSpace, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(DiscreteFramingSpace({}), ValidationError);
  EXPECT_THROW(DiscreteFramingSpace({{"a", "x"}, {"a", "y"}}), ValidationError);
  EXPECT_THROW(DiscreteFramingSpace(std::vector<Framing>{{"a", ""}}), ValidationError);
}

TEST(EnumerateFramings, SingletonSpace) {
  const auto inst = ProsecutorInstance();
  const TableOracle oracle({{"only", Belief({0.6, 0.4})}});
  const auto r = EnumerateFramings(DiscreteFramingSpace(std::vector<Framing>{{"only", "text"}}), oracle, inst,
                                   ProsecutorScheme());
  EXPECT_EQ(r.best_index, 0u);
  EXPECT_EQ(r.table.size(), 1u);
}

TEST(EnumerateFramings, ProsecutorPicksIndifferenceFraming) {
  const auto inst = ProsecutorInstance();
  const TableOracle oracle({{"plain", Belief({0.67, 0.33})}, {"stern", Belief({2.0 / 3.0, 1.0 / 3.0})}});
  const auto r = EnumerateFramings(DiscreteFramingSpace({{"plain", "p"}, {"stern", "s"}}), oracle,
                                   inst, ProsecutorScheme());
  EXPECT_EQ(r.best().framing.id, "stern");
  EXPECT_NEAR(r.utility, 0.665, 1e-12);
  EXPECT_DOUBLE_EQ(r.table[0].utility, 0.0);
}

TEST(EnumerateFramings, TiesGoToFirstFraming) {
  const auto inst = ProsecutorInstance();
  const TableOracle oracle({{"b", Belief({0.5, 0.5})}, {"a", Belief({0.5, 0.5})}});
  const auto r = EnumerateFramings(DiscreteFramingSpace({{"b", "x"}, {"a", "y"}}), oracle, inst,
                                   ProsecutorScheme());
  EXPECT_EQ(r.best().framing.id, "b");
}

TEST(EnumerateFramings, ErrorNamesFraming) {
  const auto inst = ProsecutorInstance();
  const TableOracle oracle({{"known", Belief({0.5, 0.5})}});
  try {
    EnumerateFramings(DiscreteFramingSpace({{"known", "x"}, {"missing", "y"}}), oracle, inst,
                      ProsecutorScheme());
    FAIL() << "expected an oracle error";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::kMissingEntry);
    EXPECT_NE(std::string(e.what()).find("'missing'"), std::string::npos);
  }
}

TEST(EnumerateFramings, OrderIndependentUnderConcurrency) {
  const auto inst = RandomInstance(77, 3, 3);
  Sampler rng(5);
  std::map<std::string, Belief> table;
  std::vector<Framing> framings;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "f" + std::to_string(i);
    table.emplace(id, RandomInteriorBelief(rng, 3, 0.0));
    framings.push_back({id, "text " + id});
  }
  const SlowOracle oracle(table);
  const auto scheme = RandomScheme(rng, 3, 2);
  const DiscreteFramingSpace space(framings);
  const auto serial = EnumerateFramings(space, oracle, inst, scheme, "", 1);
  const auto parallel = EnumerateFramings(space, oracle, inst, scheme, "", 8);
  ASSERT_EQ(serial.table.size(), 40u);
  EXPECT_EQ(serial.best_index, parallel.best_index);
  double max_utility = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(serial.table[i].framing.id, parallel.table[i].framing.id);
    EXPECT_EQ(serial.table[i].utility, parallel.table[i].utility);
    max_utility = std::max(max_utility, serial.table[i].utility);
  }
  EXPECT_EQ(serial.utility, max_utility);
}

TEST(Properties, DeterministicFramingDominance) {
  Sampler rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = RandomInstance(900 + trial, 3, 3);
    const auto scheme = RandomScheme(rng, 3, 3);
    const std::size_t k = 2 + rng.Index(5);
    const auto weights = rng.Simplex(k);
    double mixed = 0.0;
    double best = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double u = FixedSchemeUtility(inst, scheme, RandomInteriorBelief(rng, 3, 0.0));
      mixed += weights[i] * u;
      best = std::max(best, u);
    }
    EXPECT_LE(mixed, best + 1e-12);
  }
}

TEST(FindDiscontinuity, ProsecutorJump) {
  const auto inst = ProsecutorInstance();
  const auto scheme = ProsecutorScheme();
  const auto report = FindDiscontinuity(inst, scheme);
  ASSERT_TRUE(report.has_value());
  EXPECT_NEAR(report->indifference_belief[0], 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(report->gap, 0.665, 1e-9);
  EXPECT_EQ(report->signal, 1u);
  EXPECT_NE(report->action_plus, report->action_minus);
  EXPECT_DOUBLE_EQ(report->gap, std::abs(FixedSchemeUtility(inst, scheme, report->plus) -
                                         FixedSchemeUtility(inst, scheme, report->minus)));
}

TEST(FindDiscontinuity, FullyRevealingSchemeHasNone) {
  const auto inst = ProsecutorInstance();
  const SignalingScheme reveal({"i", "g"}, Matrix::FromRows({{1, 0}, {0, 1}}));
  EXPECT_FALSE(FindDiscontinuity(inst, reveal).has_value());
}

TEST(FindDiscontinuity, ConstantSenderUtilityHasNone) {
  const auto inst = Instance::FromRaw({"w0", "w1"}, {"a0", "a1"}, Belief({0.5, 0.5}),
                                      Matrix::FromRows({{1, 1}, {1, 1}}),
                                      Matrix::FromRows({{1, 0}, {0, 1}}));
  EXPECT_FALSE(FindDiscontinuity(inst, ProsecutorScheme()).has_value());
}

TEST(Properties, ReportedJumpsChangeTheResponse) {
  Sampler rng(31);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = RandomInstance(1300 + trial, 3, 3);
    const auto scheme = RandomScheme(rng, 3, 2, 0.05);
    const auto report = FindDiscontinuity(inst, scheme);
    if (!report) continue;
    ++found;
    EXPECT_NE(report->action_plus, report->action_minus);
    std::size_t differing = 0;
    for (std::size_t w = 0; w < 3; ++w) differing += report->plus[w] != report->minus[w];
    EXPECT_LE(differing, 2u);
    EXPECT_NEAR(report->gap, std::abs(FixedSchemeUtility(inst, scheme, report->plus) -
                                      FixedSchemeUtility(inst, scheme, report->minus)), 1e-15);
  }
  EXPECT_GT(found, 0);
}

}  // namespace
}  // namespace framecraft
