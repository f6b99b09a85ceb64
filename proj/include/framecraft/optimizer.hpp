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

#ifndef FRAMECRAFT_OPTIMIZER_HPP_
#define FRAMECRAFT_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framecraft/error.hpp"
#include "framecraft/oracle.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

enum class SearchMode { kFramingOnly, kJoint };

struct OptimizerConfig {
  std::size_t max_iterations = 10;
  SearchMode mode = SearchMode::kJoint;
  EpsilonObedience eps;
  // Stop once the best final score has not improved for this many
  // iterations; 0 disables the rule.
  std::size_t plateau_window = 0;
  std::uint64_t seed = 0;
  // Label of the utility line in the feedback text.
  std::string utility_label = "utility";
  // Instance description handed to the generator, scorer and oracle.
  std::string context;
};

struct HillClimbResult {
  IterationRecord best;
  std::vector<IterationRecord> trace;
  // Utility of the best framing recomputed from a fresh oracle query.
  double reverified_utility = 0.0;
  bool reverified_differs = false;
};

// Raised when a generator, scorer or oracle call fails mid-run. Carries every
// completed iteration.
class HillClimbError : public Error {
 public:
  HillClimbError(const std::string& what, std::vector<IterationRecord> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<IterationRecord>& partial_trace() const { return partial_; }

 private:
  std::vector<IterationRecord> partial_;
};

// Textual feedback for one iteration: labelled score lines, the belief and the
// oracle reasoning inside a delimited block.
std::string BuildFeedback(const IterationRecord& record,
                          const std::string& utility_label = "utility");

// Generate, score, query, evaluate, feed back; repeated up to max_iterations.
// Framing-only mode needs `fixed_scheme`; joint mode must not get one. The
// best record is the earliest with the maximal final score.
HillClimbResult HillClimb(const Instance& instance, const BeliefOracle& oracle,
                          const SoundnessScorer& scorer, FramingGenerator& generator,
                          const OptimizerConfig& config,
                          const std::optional<SignalingScheme>& fixed_scheme = std::nullopt);

// Shortest round-trip decimal form of x.
std::string FormatNumber(double x);

}  // namespace framecraft

#endif  // FRAMECRAFT_OPTIMIZER_HPP_
