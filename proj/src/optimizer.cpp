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

#include "framecraft/optimizer.hpp"

#include <charconv>
#include <future>
#include <sstream>

#include "framecraft/framing_only.hpp"
#include "framecraft/joint.hpp"

namespace framecraft {

std::string FormatNumber(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string BuildFeedback(const IterationRecord& record, const std::string& utility_label) {
  std::ostringstream os;
  os << "correctness_score: " << FormatNumber(record.soundness) << '\n';
  if (!record.soundness_reasoning.empty()) {
    os << "correctness_reasoning:\n<<<\n" << record.soundness_reasoning << "\n>>>\n";
  }
  os << "prior_generated: [";
  for (std::size_t i = 0; i < record.belief.size(); ++i) {
    os << (i ? ", " : "") << FormatNumber(record.belief[i]);
  }
  os << "]\n";
  os << "prior_reasoning:\n<<<\n" << record.reasoning << "\n>>>\n";
  os << utility_label << ": " << FormatNumber(record.utility) << '\n';
  os << "final_score: " << FormatNumber(record.final_score) << '\n';
  return os.str();
}

namespace {

struct Evaluation {
  double utility = 0.0;
  SignalingScheme scheme;
};

Evaluation Evaluate(const Instance& instance, const Belief& belief, const OptimizerConfig& config,
                    const std::optional<SignalingScheme>& fixed_scheme) {
  if (config.mode == SearchMode::kFramingOnly) {
    return {FixedSchemeUtility(instance, *fixed_scheme, belief), *fixed_scheme};
  }
  JointSolution sol = SolveOptimalScheme(instance, belief, config.eps);
  return {sol.sender_value, std::move(sol.scheme)};
}

}  // namespace

HillClimbResult HillClimb(const Instance& instance, const BeliefOracle& oracle,
                          const SoundnessScorer& scorer, FramingGenerator& generator,
                          const OptimizerConfig& config,
                          const std::optional<SignalingScheme>& fixed_scheme) {
  if (config.max_iterations < 1) throw ValidationError("max_iterations must be at least 1");
  if (config.mode == SearchMode::kFramingOnly && !fixed_scheme) {
    throw ValidationError("framing-only search needs a fixed scheme");
  }
  if (config.mode == SearchMode::kJoint && fixed_scheme) {
    throw ValidationError("joint search designs its own scheme; drop the fixed scheme");
  }

  HillClimbResult result;
  std::size_t best = 0;
  std::size_t since_improvement = 0;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    IterationRecord record;
    record.iteration = it + 1;
    try {
      record.framing = generator.Generate(config.context, result.trace);
      // Scoring and belief estimation are independent.
      auto scored = std::async(std::launch::async, [&] {
        return scorer.Score(record.framing, config.context);
      });
      OracleResponse response;
      try {
        response = oracle.Query(record.framing, config.context);
      } catch (...) {
        scored.wait();
        throw;
      }
      const SoundnessResult soundness = scored.get();
      if (response.belief.size() != instance.num_states()) {
        throw ValidationError("oracle belief does not match the instance's states");
      }
      record.belief = response.belief;
      record.reasoning = response.reasoning;
      record.soundness = soundness.score;
      record.soundness_reasoning = soundness.reasoning;
      Evaluation eval = Evaluate(instance, record.belief, config, fixed_scheme);
      record.utility = eval.utility;
      record.scheme = std::move(eval.scheme);
    } catch (const std::exception& e) {
      throw HillClimbError("iteration " + std::to_string(it + 1) + ": " + e.what(),
                           result.trace);
    }
    record.final_score = record.utility * record.soundness;
    record.feedback = BuildFeedback(record, config.utility_label);
    result.trace.push_back(std::move(record));

    if (it == 0 || result.trace.back().final_score > result.trace[best].final_score) {
      best = it;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (config.plateau_window > 0 && since_improvement >= config.plateau_window) break;
  }

  result.best = result.trace[best];
  try {
    const OracleResponse again = oracle.Query(result.best.framing, config.context);
    result.reverified_utility = Evaluate(instance, again.belief, config, fixed_scheme).utility;
  } catch (const std::exception& e) {
    throw HillClimbError(std::string("re-verifying the best framing: ") + e.what(),
                         result.trace);
  }
  result.reverified_differs = result.reverified_utility != result.best.utility;
  return result;
}

}  // namespace framecraft
