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

#ifndef FRAMECRAFT_TESTS_TEST_UTIL_HPP_
#define FRAMECRAFT_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "framecraft/bsg.hpp"
#include "framecraft/core.hpp"
#include "framecraft/sampling.hpp"
#include "framecraft/types.hpp"

namespace framecraft::testing {

inline std::vector<std::string> Labels(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Matrix RandomMatrix(Sampler& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.Uniform();
  }
  return m;
}

// Full-support prior bounded away from zero.
inline Belief RandomInteriorBelief(Sampler& rng, std::size_t n, double floor = 0.05) {
  auto p = rng.Simplex(n);
  for (double& x : p) x = floor + (1.0 - floor * static_cast<double>(n)) * x;
  return Belief::Normalized(std::move(p));
}

// Random instance that passes ValidateInstance (redrawn until it does).
inline Instance RandomInstance(std::uint64_t seed, std::size_t states, std::size_t actions) {
  Sampler rng(seed);
  for (;;) {
    Instance inst = Instance::FromRaw(Labels("w", states), Labels("a", actions),
                                      RandomInteriorBelief(rng, states),
                                      RandomMatrix(rng, actions, states),
                                      RandomMatrix(rng, actions, states));
    if (ValidateInstance(inst).ok()) return inst;
  }
}

inline SignalingScheme RandomScheme(Sampler& rng, std::size_t states, std::size_t signals,
                                    double floor = 0.0) {
  Matrix m(states, signals);
  for (std::size_t w = 0; w < states; ++w) {
    auto row = rng.Simplex(signals);
    for (std::size_t s = 0; s < signals; ++s) {
      m(w, s) = (floor + row[s]) / (1.0 + floor * static_cast<double>(signals));
    }
  }
  return SignalingScheme(Labels("s", signals), std::move(m));
}

// Hard-family BSG: follower action 0 pays 1, leader utility depends on the
// type and the follower action only.
inline BSGInstance HardFamilyBsg(std::uint64_t seed, std::size_t leaders, std::size_t types) {
  Sampler rng(seed);
  BSGInstance b;
  b.leader_actions = Labels("l", leaders);
  b.follower_actions = {"f0", "f1"};
  b.types = Labels("t", types);
  auto p = rng.Simplex(types);
  for (double& x : p) x = 0.1 + (1.0 - 0.1 * static_cast<double>(types)) * x;
  b.type_dist = p;
  for (std::size_t t = 0; t < types; ++t) {
    Matrix lead(leaders, 2);
    Matrix follow(leaders, 2);
    // Leader wants the follower to deviate to f1 for every other type.
    const double want1 = t % 2 == 0 ? 1.0 : 0.0;
    for (std::size_t l = 0; l < leaders; ++l) {
      lead(l, 0) = 1.0 - want1;
      lead(l, 1) = want1;
      follow(l, 0) = 1.0;
      follow(l, 1) = 2.0 * rng.Uniform();
    }
    b.leader_utility.push_back(lead);
    b.follower_utility.push_back(follow);
  }
  return b;
}

}  // namespace framecraft::testing

#endif  // FRAMECRAFT_TESTS_TEST_UTIL_HPP_
