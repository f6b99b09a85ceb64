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

#ifndef FRAMECRAFT_JOINT_HPP_
#define FRAMECRAFT_JOINT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framecraft/lattice.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

// Intersection of half-spaces coeff . mu <= bound with the simplex.
class ConvexBeliefSet {
 public:
  struct HalfSpace {
    std::vector<double> coeffs;
    double bound = 0.0;
  };

  static ConvexBeliefSet FullSimplex(std::size_t num_states);
  // {mu}, written as a pair of opposite half-spaces per coordinate.
  static ConvexBeliefSet Singleton(const Belief& mu);

  // Throws DomainError when the intersection is empty.
  ConvexBeliefSet(std::size_t num_states, std::vector<HalfSpace> half_spaces);

  std::size_t num_states() const { return num_states_; }
  bool full_simplex() const { return half_spaces_.empty(); }
  const std::vector<HalfSpace>& half_spaces() const { return half_spaces_; }

  // Half-space test only; the point is assumed to lie on the simplex.
  bool Contains(std::span<const double> mu, double tol = kLpTol) const;

 private:
  ConvexBeliefSet() = default;
  std::size_t num_states_ = 0;
  std::vector<HalfSpace> half_spaces_;
};

struct JointSolution {
  Belief belief;               // receiver belief
  SignalingScheme scheme;      // direct
  double sender_value = 0.0;   // sum_w mu0(w) sum_a pi(a|w) u(a,w), normalized scale
  double obedience_slack = 0;  // most violated obedience constraint at `belief`
};

// sum_w mu0(w) sum_a pi(a|w) u(a,w) for a direct scheme.
double DirectSchemeValue(const Instance& instance, const SignalingScheme& direct);

// Optimal direct scheme for a fixed receiver belief; obedience may be violated
// by at most eps. Forbidden pairs are held at zero. Throws LpError when the
// forbidden pairs make the program infeasible.
JointSolution SolveOptimalScheme(const Instance& instance, const Belief& receiver_belief,
                                 EpsilonObedience eps = {});

// Best SolveOptimalScheme over the resolution-uniform lattice points in B.
// Ties go to the earliest lattice point. Throws DomainError if no lattice
// point lies in B.
JointSolution JointOptimizeGrid(const Instance& instance, const ConvexBeliefSet& B,
                                std::size_t resolution, EpsilonObedience eps = {},
                                const Execution& exec = {});

// ceil(ln|A| / eps^2), at least 1.
std::size_t QptasResolution(std::size_t num_actions, double eps);

// Lattice search at QptasResolution with eps-obedience.
JointSolution Qptas(const Instance& instance, const ConvexBeliefSet& B, double eps,
                    const Execution& exec = {});

// Belief concentrated on the state with the smallest sender stake, scheme
// recommending the sender-best action elsewhere. The value is at least
// (1 - 1/|states|) of the full-information sender optimum and obedience holds
// up to eps.
JointSolution BiCriteriaUnconstrained(const Instance& instance, double eps);

// sum_w mu0(w) max_a u(a,w) over allowed actions.
double FullInformationSenderValue(const Instance& instance);

// Exact optimum when the sender's utility does not depend on the state: the
// best action that some belief makes a receiver best response, recommended
// with certainty at the nearest such belief to the prior (l1).
JointSolution StateIndependentOptimal(const Instance& instance);

struct RobustifiedScheme {
  SignalingScheme scheme;  // signals: actions, then kRevealPrefix + state
  double delta = 0.0;
  double y = 0.0;
  double p0 = 0.0;
  double margin = 0.0;       // inducibility margin D
  double eps_bound = 0.0;    // min(p0, p0^2 D / 2)
  Belief chi;                // boundary belief of the reveal part
  double action_value = 0.0;          // sender utility from action signals
  double original_value = 0.0;        // sender utility of the input scheme
};

inline constexpr const char* kRevealPrefix = "reveal:";

// Perturbs an exactly obedient direct scheme so every action recommendation
// stays strictly obedient for all beliefs within l1 distance eps of mu.
// Throws DomainError when eps >= min(p0, p0^2 D / 2), p0 = min(mu) / 2.
RobustifiedScheme RobustifyScheme(const Instance& instance, const Belief& mu,
                                  const SignalingScheme& direct, double eps);

// min over signals labelled with an action a, and over a' != a, of
// sum_w mu(w) pi(s|w) (v(a,w) - v(a',w)). Other signals are ignored.
double RecommendationSlack(const Instance& instance, const Belief& mu,
                           const SignalingScheme& scheme);

struct ContinuityProbeReport {
  std::size_t pairs = 0;
  double p0 = 0.0;
  double margin = 0.0;
  double lipschitz_bound = 0.0;  // 4 / (p0^2 D)
  double max_ratio = 0.0;        // max |U*(mu) - U*(mu')| / |mu - mu'|_1
  std::size_t violations = 0;
};

// Samples pairs with every entry >= 2 p0 and checks the Lipschitz bound of U*.
// Half of the pairs are close (distance down to 1e-4 of the region's size).
ContinuityProbeReport ContinuityProbe(const Instance& instance, std::size_t sample_count,
                                      double p0, std::uint64_t seed = 0,
                                      const Execution& exec = {});

struct SweepPoint {
  double t = 0.0;
  Belief belief;
  double value = 0.0;
  double slack = 0.0;
};

// U* along (1 - t) from + t to for t = i / (steps - 1).
std::vector<SweepPoint> SweepUtility(const Instance& instance, const Belief& from,
                                     const Belief& to, std::size_t steps,
                                     EpsilonObedience eps = {}, const Execution& exec = {});

// Index triples i < j < k into a sampled curve certifying its shape.
struct CurveShape {
  using Triple = std::array<std::size_t, 3>;
  std::optional<Triple> above_chord;  // value[j] above the chord: not convex
  std::optional<Triple> below_chord;  // value[j] below the chord: not concave
  std::optional<Triple> dip;          // value[j] below both ends: not quasi-concave
  double max_step = 0.0;              // largest |value[i+1] - value[i]|
};

// Chord tests use consecutive points; the dip uses the running maxima on both
// sides. Violations must exceed tol.
CurveShape AnalyzeCurve(const std::vector<SweepPoint>& curve, double tol = 1e-9);

}  // namespace framecraft

#endif  // FRAMECRAFT_JOINT_HPP_
