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

#ifndef FRAMECRAFT_ORACLE_HPP_
#define FRAMECRAFT_ORACLE_HPP_

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "framecraft/chat_client.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

struct Framing {
  std::string id;
  std::string text;
};

enum class OracleSource { kTable, kLlm, kNoisy };
const char* ToString(OracleSource source);

struct OracleResponse {
  Belief belief;
  std::string reasoning;
  OracleSource source = OracleSource::kTable;
};

// One step of the framing search.
struct IterationRecord {
  std::size_t iteration = 0;
  Framing framing;
  Belief belief;
  std::string reasoning;            // oracle's explanation of the belief
  double soundness = 0.0;
  std::string soundness_reasoning;
  double utility = 0.0;      // normalized sender scale
  double final_score = 0.0;  // utility * soundness
  std::string feedback;
  SignalingScheme scheme;    // scheme the utility was computed with
};

// Maps a framing to the receiver belief it induces. Implementations are safe
// to share between threads.
class BeliefOracle {
 public:
  virtual ~BeliefOracle() = default;
  virtual OracleResponse Query(const Framing& framing, const std::string& context) const = 0;
};

class TableOracle : public BeliefOracle {
 public:
  explicit TableOracle(std::map<std::string, Belief> table) : table_(std::move(table)) {}
  // Throws OracleError(kMissingEntry) for an unknown framing id.
  OracleResponse Query(const Framing& framing, const std::string& context) const override;
  const std::map<std::string, Belief>& table() const { return table_; }

 private:
  std::map<std::string, Belief> table_;
};

// Delegates, then moves the belief by at most epsilon in l1. The draw depends
// only on (seed, framing id).
class NoisyOracle : public BeliefOracle {
 public:
  NoisyOracle(std::shared_ptr<const BeliefOracle> inner, double epsilon, std::uint64_t seed);
  OracleResponse Query(const Framing& framing, const std::string& context) const override;

 private:
  std::shared_ptr<const BeliefOracle> inner_;
  double epsilon_;
  std::uint64_t seed_;
};

// Text with {name} placeholders.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string text) : text_(std::move(text)) {}
  // Reads a file; a bare name without a path separator that does not exist as
  // given is looked up as <bundled template dir>/<name>.txt.
  static PromptTemplate Load(const std::string& path_or_name);

  // Replaces {name} for every bound name. Throws ValidationError when a
  // placeholder-shaped token {identifier} is left unbound.
  std::string Render(const std::map<std::string, std::string>& vars) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::uint64_t Fnv1a64(const std::string& text);

struct ParsedBelief {
  Belief belief;
  std::string reasoning;
};

// Reads the listed keys (in state order) from a JSON object, looking inside a
// "probabilities" member when present. Sums within [0.98, 1.02] are
// renormalized. One repair pass strips markdown fences, keeps the outermost
// braces and drops trailing commas. Throws OracleError(kParse).
ParsedBelief ParseBeliefResponse(const std::string& raw, const std::vector<std::string>& keys);
Belief ParseProbabilityVector(const std::string& raw, const std::vector<std::string>& keys);

// Uniform draw in the l1 ball, Euclidean projection onto the simplex, then a
// pull toward the input if the projection left the ball.
Belief PerturbBelief(const Belief& belief, double epsilon, std::uint64_t seed);

struct LlmOracleConfig {
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
  std::string prompt_template;            // rendered text source
  std::vector<std::string> keys;          // probability keys in state order
  std::map<std::string, std::string> variables;  // {framing} and {context} are added
  int repeats = 1;                        // draws averaged per query
  bool cache = true;
};

// Renders the belief-elicitation prompt, asks the chat endpoint and parses the
// answer. Identical requests share one network call, including concurrent
// ones still in flight.
class LlmOracle : public BeliefOracle {
 public:
  LlmOracle(LlmOracleConfig config, std::shared_ptr<const ChatClient> client);
  OracleResponse Query(const Framing& framing, const std::string& context) const override;
  std::size_t network_calls() const;

 private:
  ParsedBelief Draw(const std::string& prompt, int draw) const;

  LlmOracleConfig config_;
  PromptTemplate template_;
  std::shared_ptr<const ChatClient> client_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_future<ParsedBelief>> cache_;
  mutable std::size_t calls_ = 0;
};

struct SoundnessResult {
  double score = 1.0;
  std::string reasoning;
};

class SoundnessScorer {
 public:
  virtual ~SoundnessScorer() = default;
  virtual SoundnessResult Score(const Framing& framing, const std::string& context) const = 0;
};

// Minimum score over the rules whose substring occurs in the framing; 1 when
// none match.
class ScriptedScorer : public SoundnessScorer {
 public:
  struct Rule {
    std::string contains;
    double score = 0.0;
  };
  explicit ScriptedScorer(std::vector<Rule> rules);
  SoundnessResult Score(const Framing& framing, const std::string& context) const override;

 private:
  std::vector<Rule> rules_;
};

// Parses "correctness_score" from the model's JSON answer; values outside
// [0, 1] are rejected.
double ParseSoundnessScore(const std::string& raw, std::string* reasoning = nullptr);

struct LlmPromptConfig {
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
  std::string prompt_template;
  std::map<std::string, std::string> variables;
};

class LlmScorer : public SoundnessScorer {
 public:
  LlmScorer(LlmPromptConfig config, std::shared_ptr<const ChatClient> client);
  SoundnessResult Score(const Framing& framing, const std::string& context) const override;

 private:
  LlmPromptConfig config_;
  PromptTemplate template_;
  std::shared_ptr<const ChatClient> client_;
};

// Produces the next candidate framing. Stateful; not shared between threads.
class FramingGenerator {
 public:
  virtual ~FramingGenerator() = default;
  virtual Framing Generate(const std::string& context,
                           const std::vector<IterationRecord>& history) = 0;
};

// Pops framings from a fixed list; OracleError(kExhausted) afterwards.
class ScriptedGenerator : public FramingGenerator {
 public:
  explicit ScriptedGenerator(std::vector<Framing> framings);
  Framing Generate(const std::string& context,
                   const std::vector<IterationRecord>& history) override;

 private:
  std::vector<Framing> framings_;
  std::size_t next_ = 0;
};

struct LlmGeneratorConfig {
  LlmPromptConfig prompt;
  // JSON keys of the answer joined (newline) into the framing text; when
  // empty the whole answer is used.
  std::vector<std::string> response_keys;
};

// Conversation: the rendered base prompt, then for every past record the
// generated framing (assistant) and its feedback (user).
class LlmGenerator : public FramingGenerator {
 public:
  LlmGenerator(LlmGeneratorConfig config, std::shared_ptr<const ChatClient> client);
  Framing Generate(const std::string& context,
                   const std::vector<IterationRecord>& history) override;
  ChatRequest BuildRequest(const std::string& context,
                           const std::vector<IterationRecord>& history) const;

 private:
  LlmGeneratorConfig config_;
  PromptTemplate template_;
  std::shared_ptr<const ChatClient> client_;
  std::size_t generated_ = 0;
};

}  // namespace framecraft

#endif  // FRAMECRAFT_ORACLE_HPP_
