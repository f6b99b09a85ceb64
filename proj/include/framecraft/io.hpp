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

#ifndef FRAMECRAFT_IO_HPP_
#define FRAMECRAFT_IO_HPP_

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "framecraft/bsg.hpp"
#include "framecraft/core.hpp"
#include "framecraft/framing_only.hpp"
#include "framecraft/joint.hpp"
#include "framecraft/optimizer.hpp"
#include "framecraft/oracle.hpp"
#include "framecraft/types.hpp"

namespace framecraft::io {

using Json = nlohmann::ordered_json;

// Every loader throws ValidationError naming the offending field.
Json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Raw-scale utilities, rows = actions, columns = states; null cells and
// "forbidden_pairs" entries mark forbidden (action, state) pairs.
Instance InstanceFromJson(const Json& j);
Json InstanceToJson(const Instance& instance);
Instance LoadInstance(const std::string& path);

// {"signals": [...], "probs": [[pi(s|w) per signal] per state]}
SignalingScheme SchemeFromJson(const Json& j);
Json SchemeToJson(const SignalingScheme& scheme);
SignalingScheme LoadScheme(const std::string& path);

// A JSON array, {"belief": [...]}, a file holding either, or an inline
// comma-separated list.
Belief BeliefFromJson(const Json& j);
Belief ParseBeliefArgument(const std::string& text);
Json BeliefToJson(const Belief& belief);

// {"half_spaces": [{"coeffs": [...], "bound": b}, ...]}; empty means the
// full simplex.
ConvexBeliefSet BeliefSetFromJson(const Json& j, std::size_t num_states);
ConvexBeliefSet LoadBeliefSet(const std::string& path, std::size_t num_states);

BSGInstance BsgFromJson(const Json& j);
Json BsgToJson(const BSGInstance& bsg);
BSGInstance LoadBsg(const std::string& path);

// [{"id": ..., "text": ...}, ...] or {"framings": [...]}.
std::vector<Framing> FramingsFromJson(const Json& j);
Json FramingsToJson(const std::vector<Framing>& framings);

// {"framing id": [probabilities], ...}
std::map<std::string, Belief> BeliefTableFromJson(const Json& j);

// Oracle, scorer and generator configurations select an implementation by
// "kind". LLM kinds read the endpoint, model, temperature, timeout, retries,
// template (path or bundled name) and template variables; the API key comes
// from FRAMECRAFT_LLM_KEY.
std::shared_ptr<const BeliefOracle> OracleFromJson(const Json& j);
std::shared_ptr<const SoundnessScorer> ScorerFromJson(const Json& j);
std::unique_ptr<FramingGenerator> GeneratorFromJson(const Json& j);

Json NormalizationToJson(const NormalizationRecord& record);
// Value in both scales.
Json SenderValueToJson(const Instance& instance, double normalized);

Json JointSolutionToJson(const Instance& instance, const JointSolution& solution);
Json RobustifiedToJson(const Instance& instance, const RobustifiedScheme& robust);
Json DiscontinuityToJson(const Instance& instance, const SignalingScheme& scheme,
                         const DiscontinuityReport& report);
Json ProbeToJson(const ContinuityProbeReport& report);
Json ValidationToJson(const ValidationReport& report);
Json BsgSolutionToJson(const BSGInstance& bsg, const BSGSolution& solution);
Json EnumerationToJson(const Instance& instance, const EnumerationResult& result);
Json IterationToJson(const Instance& instance, const IterationRecord& record);
Json HillClimbToJson(const Instance& instance, const HillClimbResult& result);

// CSV tables. Numbers use the shortest round-trip form; text cells are quoted
// when they contain separators, quotes or newlines.
std::string EnumerationCsv(const Instance& instance, const EnumerationResult& result);
std::string SweepCsv(const Instance& instance, const std::vector<SweepPoint>& curve);
std::string TraceCsv(const std::vector<IterationRecord>& trace);
std::string CsvEscape(const std::string& cell);

}  // namespace framecraft::io

#endif  // FRAMECRAFT_IO_HPP_
