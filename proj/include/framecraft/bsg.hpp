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

#ifndef FRAMECRAFT_BSG_HPP_
#define FRAMECRAFT_BSG_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "framecraft/lattice.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

// Bayesian Stackelberg game. Utility matrices are indexed [type] then
// (leader action, follower action).
struct BSGInstance {
  std::vector<std::string> leader_actions;
  std::vector<std::string> follower_actions;
  std::vector<std::string> types;
  std::vector<double> type_dist;
  std::vector<Matrix> leader_utility;
  std::vector<Matrix> follower_utility;

  // Shapes, finiteness and a type distribution on the simplex.
  void Validate() const;
};

struct BSGSolution {
  std::vector<double> leader_strategy;  // x over leader actions
  double value = 0.0;
  std::vector<std::size_t> follower_profile;  // follower action per type
};

// Leader value of x when each type best-responds, ties to the leader's
// preferred action, then the lowest index.
double BsgLeaderValue(const BSGInstance& bsg, const std::vector<double>& x);

// One LP per follower best-response profile; the best feasible profile wins,
// ties to the earliest profile. Throws ValidationError above 1e6 profiles.
BSGSolution SolveBsgExact(const BSGInstance& bsg, const Execution& exec = {});

// Best BsgLeaderValue over the resolution-uniform lattice of leader strategies.
BSGSolution SolveBsgGrid(const BSGInstance& bsg, std::size_t resolution);

// Leader actions are the states, follower types are the signals. Every signal
// must have positive probability under the instance prior.
BSGInstance ReduceFramingToBsg(const Instance& instance, const SignalingScheme& scheme);

struct HardFamilyConstants {
  double eps = 0.0;
  double L = 0.0;
  double N = 0.0;
  double K = 0.0;
  double M = 0.0;
  double v_max = 0.0;
  double p_min = 0.0;
};

struct FramingReduction {
  Instance instance;  // sender utilities already scaled by 1 / (1 - eps)
  SignalingScheme scheme;
  HardFamilyConstants constants;
};

// Builds the framing-only instance whose optimum equals the BSG optimum.
// The BSG must have two follower actions, follower utility 1 for the first
// action everywhere and within [0, v_max] otherwise, leader utility in {0, 1}
// independent of the leader's action, and a type distribution with full
// support. States: one per leader action, one per type, then a dummy state.
// Actions: the two type-tagged actions per type, then two dummy actions.
FramingReduction ReduceBsgToFraming(const BSGInstance& bsg, double eps);

struct FramingOptimum {
  Belief belief;
  double value = 0.0;  // normalized sender scale
  std::vector<std::size_t> response_profile;  // action per signal
};

// Dense-grid maximization of the fixed-scheme utility; |states| <= 3.
// Ties go to the earliest lattice point.
FramingOptimum SolveFramingExactSmall(const Instance& instance, const SignalingScheme& scheme,
                                      std::size_t resolution, const Execution& exec = {});

// Exact maximization of the fixed-scheme utility over the simplex for any
// number of states: one feasibility LP per response profile (action per
// signal), with weak obedience as in a Stackelberg game. The returned belief
// maximizes the smallest receiver signal probability within the best profile.
// Exceeds the grid value only through signals of zero receiver probability.
// Throws ValidationError above 1e6 profiles.
FramingOptimum SolveFramingExact(const Instance& instance, const SignalingScheme& scheme,
                                 const Execution& exec = {});

}  // namespace framecraft

#endif  // FRAMECRAFT_BSG_HPP_
