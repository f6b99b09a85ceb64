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

#ifndef FRAMECRAFT_FRAMING_ONLY_HPP_
#define FRAMECRAFT_FRAMING_ONLY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "framecraft/oracle.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

// Sender utility of a fixed scheme when framing moves the receiver's prior to
// `receiver_belief`. Same value as SenderExAnteUtility.
double FixedSchemeUtility(const Instance& instance, const SignalingScheme& scheme,
                          const Belief& receiver_belief);

// A finite list of candidate framings with unique ids and non-empty texts.
class DiscreteFramingSpace {
 public:
  // Throws ValidationError on an empty list, duplicate ids or empty texts.
  explicit DiscreteFramingSpace(std::vector<Framing> framings);
  const std::vector<Framing>& framings() const { return framings_; }
  std::size_t size() const { return framings_.size(); }

 private:
  std::vector<Framing> framings_;
};

struct FramingEvaluation {
  Framing framing;
  Belief belief;
  std::string reasoning;
  double utility = 0.0;
};

struct EnumerationResult {
  std::size_t best_index = 0;
  double utility = 0.0;
  std::vector<FramingEvaluation> table;  // one row per framing, in space order

  const FramingEvaluation& best() const { return table[best_index]; }
};

// Queries every framing (at most `concurrency` at a time), evaluates the fixed
// scheme at each induced belief and returns the first maximizer. A failing
// query aborts the run with an error naming the framing; when several fail the
// earliest framing is reported.
EnumerationResult EnumerateFramings(const DiscreteFramingSpace& space, const BeliefOracle& oracle,
                                    const Instance& instance, const SignalingScheme& scheme,
                                    const std::string& context = {}, int concurrency = 4);

struct DiscontinuityReport {
  Belief indifference_belief;  // receiver indifferent between the two actions at `signal`
  Belief plus;                 // indifference + eps (e_first - e_second)
  Belief minus;                // indifference - eps (e_first - e_second)
  double eps = 0.0;
  double gap = 0.0;            // |U(plus) - U(minus)|
  std::vector<double> ladder_gaps;  // gap per entry of the eps ladder
  std::size_t signal = 0;
  std::size_t first_action = 0;
  std::size_t second_action = 0;
  std::size_t first_state = 0;
  std::size_t second_state = 0;
  std::size_t action_plus = 0;   // response at `signal` on the plus side
  std::size_t action_minus = 0;  // response at `signal` on the minus side
};

inline constexpr double kIndifferenceTol = 1e-10;
inline const std::vector<double> kEpsLadder = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

// Searches two-state edges of the simplex for a receiver indifference point at
// a signal sent with positive probability in every state, and reports the
// largest jump of the fixed-scheme utility across such a point. A jump counts
// when its size changes by less than 10% between the two smallest eps and the
// response at the signal differs on the two sides. Returns nullopt when no
// such signal exists or every jump vanishes.
std::optional<DiscontinuityReport> FindDiscontinuity(const Instance& instance,
                                                     const SignalingScheme& scheme);

}  // namespace framecraft

#endif  // FRAMECRAFT_FRAMING_ONLY_HPP_
