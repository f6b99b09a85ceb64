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

#ifndef FRAMECRAFT_CORE_HPP_
#define FRAMECRAFT_CORE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "framecraft/types.hpp"

namespace framecraft {

struct NormalizedUtilities {
  Matrix sender;
  Matrix receiver;
  NormalizationRecord record;
};

// Per-matrix affine min-max map onto [0,1]. A constant matrix maps to 0.5
// with scale 1. Cells flagged in `skip` (same shape, nonzero = skip) are left
// out of the min/max and written as 0.
NormalizedUtilities NormalizeUtilities(const Matrix& raw_sender, const Matrix& raw_receiver,
                                       const std::vector<char>& skip = {});

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // names the violating item when failed
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  std::string ToString() const;
};

// Full-support prior, utility range and strict inducibility of every action.
ValidationReport ValidateInstance(const Instance& instance);

// Bayes rule. Throws DomainError when `signal` has zero probability under `mu`.
Belief Posterior(const Belief& mu, const SignalingScheme& scheme, std::size_t signal);
Belief Posterior(const Belief& mu, const SignalingScheme& scheme, const std::string& signal);

// Receiver best response to `posterior`; ties within kTieTol go to the action
// with the higher sender expected utility under the same posterior, then to the
// lower index.
std::size_t BestResponse(const Belief& posterior, const Instance& instance);

// As above, but receiver ties are broken by the sender's expected utility under
// `sender_posterior` (the sender's own conditional belief given the signal).
std::size_t BestResponse(const Belief& receiver_posterior, const Belief& sender_posterior,
                         const Instance& instance);

// Best response on unnormalized weights w(state) = mu(state) * pi(s|state);
// used on hot paths to avoid building Beliefs.
std::size_t BestResponseWeighted(std::span<const double> receiver_weights,
                                 std::span<const double> sender_weights,
                                 const Instance& instance);

// Receiver action taken on every signal of `scheme` when the receiver's prior
// is `receiver_belief`. Signals with zero receiver probability follow the
// fallback convention: the recommended action for a direct scheme, otherwise
// the best response to the receiver's prior.
std::vector<std::size_t> ResponseProfile(const Instance& instance, const Belief& receiver_belief,
                                         const SignalingScheme& scheme);

// Sender ex-ante utility (normalized scale) when the sender prior is the
// instance prior and the receiver starts from `receiver_belief`.
double SenderExAnteUtility(const Instance& instance, const Belief& receiver_belief,
                           const SignalingScheme& scheme);

// True when the signal labels equal the action labels in order.
bool IsDirect(const SignalingScheme& scheme, const Instance& instance);

// Merges signals by the action they induce. Output signals are the actions.
SignalingScheme DirectScheme(const SignalingScheme& scheme, const Belief& receiver_belief,
                             const Instance& instance);

struct InducibilityMargin {
  double margin = 0.0;                      // D = min over actions
  std::vector<double> per_action;           // optimum of each action's LP
  std::vector<Belief> inducing_beliefs;     // eta_a
};

// For each action, max delta s.t. eta.(v(a) - v(a')) >= delta for all a' != a.
InducibilityMargin ComputeInducibilityMargin(const Instance& instance);

// Most violated obedience constraint of a direct scheme at `belief`:
// min over (a, a') of sum_w belief(w) pi(a|w) (v(a,w) - v(a',w)).
// Returns 0 when there is a single action.
double ObedienceSlack(const Instance& instance, const Belief& belief,
                      const SignalingScheme& direct);

}  // namespace framecraft

#endif  // FRAMECRAFT_CORE_HPP_
