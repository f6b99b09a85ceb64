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

#include "framecraft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "framecraft/error.hpp"
#include "framecraft/sampling.hpp"

#ifndef FRAMECRAFT_TEMPLATE_DIR
#define FRAMECRAFT_TEMPLATE_DIR "templates"
#endif

namespace framecraft {

using nlohmann::json;

namespace {

OracleError ParseError(const std::string& what) {
  return OracleError(OracleError::Kind::kParse, what);
}

std::optional<json> TryParse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

std::string Repair(const std::string& raw) {
  std::istringstream in(raw);
  std::string line;
  std::string stripped;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line.compare(first, 3, "```") == 0) continue;
    stripped += line;
    stripped += '\n';
  }
  const auto open = stripped.find('{');
  const auto close = stripped.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) return stripped;
  stripped = stripped.substr(open, close - open + 1);
  static const std::regex trailing_comma(R"(,(\s*[}\]]))");
  return std::regex_replace(stripped, trailing_comma, "$1");
}

json ParseObject(const std::string& raw) {
  if (auto j = TryParse(raw)) return *j;
  if (auto j = TryParse(Repair(raw))) return *j;
  throw ParseError("response does not contain a JSON object");
}

std::string ReasoningOf(const json& j) {
  const auto it = j.find("reasoning");
  if (it == j.end()) return {};
  return it->is_string() ? it->get<std::string>() : it->dump();
}

}  // namespace

const char* ToString(OracleSource source) {
  switch (source) {
    case OracleSource::kTable:
      return "table";
    case OracleSource::kLlm:
      return "llm";
    case OracleSource::kNoisy:
      return "noisy";
  }
  return "unknown";
}

OracleResponse TableOracle::Query(const Framing& framing, const std::string&) const {
  const auto it = table_.find(framing.id);
  if (it == table_.end()) {
    throw OracleError(OracleError::Kind::kMissingEntry,
                      "table oracle has no entry for framing '" + framing.id + "'");
  }
  return {it->second, "table lookup", OracleSource::kTable};
}

NoisyOracle::NoisyOracle(std::shared_ptr<const BeliefOracle> inner, double epsilon,
                         std::uint64_t seed)
    : inner_(std::move(inner)), epsilon_(epsilon), seed_(seed) {
  if (!inner_) throw ValidationError("noisy oracle needs an inner oracle");
  if (!(epsilon_ >= 0.0)) throw ValidationError("noisy oracle epsilon must be nonnegative");
}

OracleResponse NoisyOracle::Query(const Framing& framing, const std::string& context) const {
  OracleResponse inner = inner_->Query(framing, context);
  const std::uint64_t seed = seed_ ^ Fnv1a64(framing.id);
  return {PerturbBelief(inner.belief, epsilon_, seed), inner.reasoning, OracleSource::kNoisy};
}

std::uint64_t Fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

PromptTemplate PromptTemplate::Load(const std::string& path_or_name) {
  namespace fs = std::filesystem;
  fs::path path(path_or_name);
  if (!fs::exists(path) && path_or_name.find('/') == std::string::npos) {
    path = fs::path(FRAMECRAFT_TEMPLATE_DIR) / (path_or_name + ".txt");
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read prompt template " + path_or_name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return PromptTemplate(ss.str());
}

std::string PromptTemplate::Render(const std::map<std::string, std::string>& vars) const {
  static const std::regex placeholder(R"(\{([A-Za-z_][A-Za-z0-9_]*)\})");
  std::string out;
  auto begin = std::sregex_iterator(text_.begin(), text_.end(), placeholder);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& match = *it;
    const auto found = vars.find(match[1].str());
    if (found == vars.end()) {
      throw ValidationError("prompt template placeholder {" + match[1].str() + "} is unbound");
    }
    out.append(text_, last, static_cast<std::size_t>(match.position(0)) - last);
    out += found->second;
    last = static_cast<std::size_t>(match.position(0) + match.length(0));
  }
  out.append(text_, last, std::string::npos);
  return out;
}

ParsedBelief ParseBeliefResponse(const std::string& raw, const std::vector<std::string>& keys) {
  if (keys.empty()) throw ValidationError("no probability keys configured");
  const json root = ParseObject(raw);
  const json* probs = &root;
  if (const auto it = root.find("probabilities"); it != root.end() && it->is_object()) {
    probs = &*it;
  }
  std::vector<double> values;
  double total = 0.0;
  for (const auto& key : keys) {
    const auto it = probs->find(key);
    if (it == probs->end()) throw ParseError("response is missing probability key '" + key + "'");
    if (!it->is_number()) throw ParseError("probability '" + key + "' is not a number");
    const double x = it->get<double>();
    if (!std::isfinite(x)) throw ParseError("probability '" + key + "' is not finite");
    if (x < 0.0) throw ParseError("probability '" + key + "' is negative");
    values.push_back(x);
    total += x;
  }
  if (total < 0.98 || total > 1.02) {
    std::ostringstream os;
    os << "probabilities sum to " << total << ", outside [0.98, 1.02]";
    throw ParseError(os.str());
  }
  for (double& x : values) x /= total;
  return {Belief(std::move(values)), ReasoningOf(root)};
}

Belief ParseProbabilityVector(const std::string& raw, const std::vector<std::string>& keys) {
  return ParseBeliefResponse(raw, keys).belief;
}

Belief PerturbBelief(const Belief& belief, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0)) throw ValidationError("perturbation epsilon must be nonnegative");
  if (epsilon == 0.0) return belief;
  const std::size_t n = belief.size();
  Sampler rng(seed);
  const auto step = rng.L1Ball(n, epsilon);
  std::vector<double> moved(n);
  for (std::size_t i = 0; i < n; ++i) moved[i] = belief[i] + step[i];
  auto projected = ProjectToSimplex(moved);
  const double dist = L1Distance(projected, belief.probs());
  if (dist > epsilon) {
    // Convex combination of two simplex points stays on the simplex.
    const double keep = epsilon / dist * (1.0 - 1e-12);
    for (std::size_t i = 0; i < n; ++i) projected[i] = belief[i] + keep * (projected[i] - belief[i]);
  }
  return Belief::Normalized(std::move(projected));
}

LlmOracle::LlmOracle(LlmOracleConfig config, std::shared_ptr<const ChatClient> client)
    : config_(std::move(config)), template_(config_.prompt_template), client_(std::move(client)) {
  if (!client_) throw ValidationError("LLM oracle needs a chat client");
  if (config_.repeats < 1) throw ValidationError("LLM oracle repeats must be at least 1");
}

std::size_t LlmOracle::network_calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

ParsedBelief LlmOracle::Draw(const std::string& prompt, int draw) const {
  const auto call = [&]() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      ++calls_;
    }
    ChatRequest request{config_.model, config_.temperature, {{"user", prompt}}};
    return ParseBeliefResponse(client_->Complete(request), config_.keys);
  };
  if (!config_.cache) return call();

  const std::string key = prompt + '\x1f' + config_.model + '\x1f' +
                          (config_.temperature == 0.0 ? "t0" : "t+") + '\x1f' +
                          std::to_string(draw);
  std::promise<ParsedBelief> promise;
  std::shared_future<ParsedBelief> future;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      cache_.emplace(key, future);
      // This thread owns the call; others wait on the shared future.
      try {
        mutex_.unlock();
        promise.set_value(call());
        mutex_.lock();
      } catch (...) {
        mutex_.lock();
        cache_.erase(key);
        promise.set_exception(std::current_exception());
      }
    }
  }
  return future.get();
}

OracleResponse LlmOracle::Query(const Framing& framing, const std::string& context) const {
  auto vars = config_.variables;
  vars["framing"] = framing.text;
  vars["context"] = context;
  const std::string prompt = template_.Render(vars);
  std::vector<double> mean;
  std::string reasoning;
  for (int d = 0; d < config_.repeats; ++d) {
    const ParsedBelief draw = Draw(prompt, d);
    if (d == 0) {
      mean.assign(draw.belief.size(), 0.0);
      reasoning = draw.reasoning;
    }
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += draw.belief[i] / config_.repeats;
  }
  return {Belief::Normalized(std::move(mean)), reasoning, OracleSource::kLlm};
}

ScriptedScorer::ScriptedScorer(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    if (!(r.score >= 0.0 && r.score <= 1.0)) {
      throw ValidationError("scripted soundness score must lie in [0, 1]");
    }
  }
}

SoundnessResult ScriptedScorer::Score(const Framing& framing, const std::string&) const {
  SoundnessResult out;
  for (const auto& r : rules_) {
    if (framing.text.find(r.contains) == std::string::npos) continue;
    if (r.score < out.score) {
      out.score = r.score;
      out.reasoning = "mentions '" + r.contains + "'";
    }
  }
  return out;
}

double ParseSoundnessScore(const std::string& raw, std::string* reasoning) {
  const json root = ParseObject(raw);
  const auto it = root.find("correctness_score");
  if (it == root.end() || !it->is_number()) {
    throw ParseError("response has no numeric correctness_score");
  }
  const double score = it->get<double>();
  if (!(score >= 0.0 && score <= 1.0)) {
    throw ParseError("correctness_score " + it->dump() + " is outside [0, 1]");
  }
  if (reasoning != nullptr) *reasoning = ReasoningOf(root);
  return score;
}

LlmScorer::LlmScorer(LlmPromptConfig config, std::shared_ptr<const ChatClient> client)
    : config_(std::move(config)), template_(config_.prompt_template), client_(std::move(client)) {
  if (!client_) throw ValidationError("LLM scorer needs a chat client");
}

SoundnessResult LlmScorer::Score(const Framing& framing, const std::string& context) const {
  auto vars = config_.variables;
  vars["framing"] = framing.text;
  vars["context"] = context;
  ChatRequest request{config_.model, config_.temperature, {{"user", template_.Render(vars)}}};
  SoundnessResult out;
  out.score = ParseSoundnessScore(client_->Complete(request), &out.reasoning);
  return out;
}

ScriptedGenerator::ScriptedGenerator(std::vector<Framing> framings)
    : framings_(std::move(framings)) {
  for (std::size_t i = 0; i < framings_.size(); ++i) {
    if (framings_[i].text.empty()) throw ValidationError("scripted framing text is empty");
    if (framings_[i].id.empty()) framings_[i].id = "scripted-" + std::to_string(i + 1);
  }
}

Framing ScriptedGenerator::Generate(const std::string&, const std::vector<IterationRecord>&) {
  if (next_ >= framings_.size()) {
    throw OracleError(OracleError::Kind::kExhausted, "scripted framing list is exhausted");
  }
  return framings_[next_++];
}

LlmGenerator::LlmGenerator(LlmGeneratorConfig config, std::shared_ptr<const ChatClient> client)
    : config_(std::move(config)),
      template_(config_.prompt.prompt_template),
      client_(std::move(client)) {
  if (!client_) throw ValidationError("LLM generator needs a chat client");
}

ChatRequest LlmGenerator::BuildRequest(const std::string& context,
                                       const std::vector<IterationRecord>& history) const {
  auto vars = config_.prompt.variables;
  vars["context"] = context;
  ChatRequest request{config_.prompt.model, config_.prompt.temperature,
                      {{"user", template_.Render(vars)}}};
  for (const auto& record : history) {
    request.messages.push_back({"assistant", record.framing.text});
    request.messages.push_back({"user", record.feedback});
  }
  return request;
}

Framing LlmGenerator::Generate(const std::string& context,
                               const std::vector<IterationRecord>& history) {
  const std::string raw = client_->Complete(BuildRequest(context, history));
  std::string text;
  if (config_.response_keys.empty()) {
    text = raw;
  } else {
    const json root = ParseObject(raw);
    for (const auto& key : config_.response_keys) {
      const auto it = root.find(key);
      if (it == root.end() || !it->is_string()) {
        throw ParseError("generator response has no string field '" + key + "'");
      }
      if (!text.empty()) text += '\n';
      text += it->get<std::string>();
    }
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("generator returned an empty framing");
  text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);
  return {"llm-" + std::to_string(++generated_), text};
}

}  // namespace framecraft
