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

#include "framecraft/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "framecraft/chat_client.hpp"
#include "framecraft/error.hpp"

namespace framecraft::io {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object()) throw ValidationError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T As(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("field '") + what + "': " + e.what());
  }
}

template <typename T>
T Get(const Json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return As<T>(*it, key);
}

std::vector<std::string> Strings(const Json& j, const char* key) {
  return As<std::vector<std::string>>(Field(j, key), key);
}

Matrix MatrixFrom(const Json& j, const char* key, std::size_t rows, std::size_t cols,
                  std::vector<char>* null_cells = nullptr) {
  if (!j.is_array() || j.size() != rows) {
    throw ValidationError(std::string("'") + key + "' must have " + std::to_string(rows) +
                          " rows");
  }
  Matrix m(rows, cols);
  if (null_cells) null_cells->assign(rows * cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ValidationError(std::string("'") + key + "' row " + std::to_string(r) + " must have " +
                            std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& cell = j[r][c];
      if (cell.is_null()) {
        if (!null_cells) {
          throw ValidationError(std::string("'") + key + "' has a null cell");
        }
        (*null_cells)[r * cols + c] = 1;
        continue;
      }
      if (!cell.is_number()) {
        throw ValidationError(std::string("'") + key + "' entries must be numbers");
      }
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

std::size_t IndexOf(const std::vector<std::string>& labels, const std::string& label,
                    const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw ValidationError(std::string("unknown ") + what + " '" + label + "'");
}

Json MatrixJson(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Json LabelledBelief(const std::vector<std::string>& labels, const Belief& b) {
  Json out = Json::object();
  for (std::size_t i = 0; i < b.size(); ++i) out[labels[i]] = b[i];
  return out;
}

std::string TemplateText(const Json& j) {
  return PromptTemplate::Load(As<std::string>(Field(j, "template"), "template")).text();
}

std::map<std::string, std::string> Variables(const Json& j) {
  return Get<std::map<std::string, std::string>>(j, "variables", {});
}

std::shared_ptr<const ChatClient> ClientFromJson(const Json& j) {
  HttpChatConfig config;
  config.endpoint =
      Get<std::string>(j, "endpoint", "https://api.openai.com/v1/chat/completions");
  config.api_key = ApiKeyFromEnvironment();
  config.timeout_seconds = Get<int>(j, "timeout", config.timeout_seconds);
  config.retries = Get<int>(j, "retries", config.retries);
  config.backoff_ms = Get<int>(j, "backoff_ms", config.backoff_ms);
  return std::make_shared<HttpChatClient>(config);
}

LlmPromptConfig PromptConfigFromJson(const Json& j) {
  LlmPromptConfig config;
  config.model = Get<std::string>(j, "model", config.model);
  config.temperature = Get<double>(j, "temperature", config.temperature);
  config.prompt_template = TemplateText(j);
  config.variables = Variables(j);
  return config;
}

std::string Kind(const Json& j) { return As<std::string>(Field(j, "kind"), "kind"); }

}  // namespace

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

Instance InstanceFromJson(const Json& j) {
  auto states = Strings(j, "states");
  auto actions = Strings(j, "actions");
  Belief prior(As<std::vector<double>>(Field(j, "prior"), "prior"));
  std::vector<char> null_u;
  std::vector<char> null_v;
  const Matrix u =
      MatrixFrom(Field(j, "sender_utility"), "sender_utility", actions.size(), states.size(), &null_u);
  const Matrix v = MatrixFrom(Field(j, "receiver_utility"), "receiver_utility", actions.size(),
                              states.size(), &null_v);
  std::vector<std::pair<std::size_t, std::size_t>> forbidden;
  for (std::size_t a = 0; a < actions.size(); ++a) {
    for (std::size_t w = 0; w < states.size(); ++w) {
      const std::size_t k = a * states.size() + w;
      if (null_u[k] || null_v[k]) forbidden.emplace_back(a, w);
    }
  }
  if (const auto it = j.find("forbidden_pairs"); it != j.end()) {
    for (const auto& pair : *it) {
      const auto labels = As<std::vector<std::string>>(pair, "forbidden_pairs");
      if (labels.size() != 2) throw ValidationError("forbidden pair must be [action, state]");
      const std::pair<std::size_t, std::size_t> p{IndexOf(actions, labels[0], "action"),
                                                  IndexOf(states, labels[1], "state")};
      if (std::find(forbidden.begin(), forbidden.end(), p) == forbidden.end()) {
        forbidden.push_back(p);
      }
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  return Instance::FromRaw(std::move(states), std::move(actions), std::move(prior), u, v,
                           std::move(forbidden));
}

Json InstanceToJson(const Instance& instance) {
  const auto& rec = instance.normalization();
  Json u = Json::array();
  Json v = Json::array();
  for (std::size_t a = 0; a < instance.num_actions(); ++a) {
    Json ur = Json::array();
    Json vr = Json::array();
    for (std::size_t w = 0; w < instance.num_states(); ++w) {
      if (instance.forbidden(a, w)) {
        ur.push_back(nullptr);
        vr.push_back(nullptr);
      } else {
        ur.push_back(rec.SenderToRaw(instance.u(a, w)));
        vr.push_back(rec.ReceiverToRaw(instance.v(a, w)));
      }
    }
    u.push_back(ur);
    v.push_back(vr);
  }
  Json out = Json::object();
  out["states"] = instance.states();
  out["actions"] = instance.actions();
  out["prior"] = instance.prior().vec();
  out["sender_utility"] = u;
  out["receiver_utility"] = v;
  return out;
}

Instance LoadInstance(const std::string& path) { return InstanceFromJson(ReadJsonFile(path)); }

SignalingScheme SchemeFromJson(const Json& j) {
  auto signals = Strings(j, "signals");
  const Json& probs = Field(j, "probs");
  if (!probs.is_array() || probs.empty()) throw ValidationError("'probs' must be a non-empty list");
  Matrix m = MatrixFrom(probs, "probs", probs.size(), signals.size());
  return SignalingScheme(std::move(signals), std::move(m));
}

Json SchemeToJson(const SignalingScheme& scheme) {
  Json out = Json::object();
  out["signals"] = scheme.signals();
  out["probs"] = MatrixJson(scheme.probs());
  return out;
}

SignalingScheme LoadScheme(const std::string& path) { return SchemeFromJson(ReadJsonFile(path)); }

Belief BeliefFromJson(const Json& j) {
  if (j.is_object()) return BeliefFromJson(Field(j, "belief"));
  return Belief(As<std::vector<double>>(j, "belief"));
}

Belief ParseBeliefArgument(const std::string& text) {
  if (std::filesystem::exists(text)) return BeliefFromJson(ReadJsonFile(text));
  const Json parsed = Json::parse(text, nullptr, false);
  if (!parsed.is_discarded() && (parsed.is_array() || parsed.is_object())) {
    return BeliefFromJson(parsed);
  }
  std::vector<double> probs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      probs.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ValidationError("cannot parse belief '" + text + "'");
    }
  }
  return Belief(std::move(probs));
}

Json BeliefToJson(const Belief& belief) { return belief.vec(); }

ConvexBeliefSet BeliefSetFromJson(const Json& j, std::size_t num_states) {
  std::vector<ConvexBeliefSet::HalfSpace> hs;
  const Json& list = j.is_array() ? j : Field(j, "half_spaces");
  for (const auto& h : list) {
    ConvexBeliefSet::HalfSpace half;
    half.coeffs = As<std::vector<double>>(Field(h, "coeffs"), "coeffs");
    half.bound = As<double>(Field(h, "bound"), "bound");
    if (half.coeffs.size() != num_states) {
      throw ValidationError("half-space has " + std::to_string(half.coeffs.size()) +
                            " coefficients, instance has " + std::to_string(num_states) +
                            " states");
    }
    hs.push_back(std::move(half));
  }
  if (hs.empty()) return ConvexBeliefSet::FullSimplex(num_states);
  return ConvexBeliefSet(num_states, std::move(hs));
}

ConvexBeliefSet LoadBeliefSet(const std::string& path, std::size_t num_states) {
  return BeliefSetFromJson(ReadJsonFile(path), num_states);
}

BSGInstance BsgFromJson(const Json& j) {
  BSGInstance bsg;
  bsg.leader_actions = Strings(j, "leader_actions");
  bsg.follower_actions = Strings(j, "follower_actions");
  bsg.types = Strings(j, "types");
  bsg.type_dist = As<std::vector<double>>(Field(j, "type_dist"), "type_dist");
  const Json& lu = Field(j, "leader_utility");
  const Json& fu = Field(j, "follower_utility");
  if (!lu.is_array() || lu.size() != bsg.types.size() || !fu.is_array() ||
      fu.size() != bsg.types.size()) {
    throw ValidationError("utilities need one matrix per type");
  }
  for (std::size_t t = 0; t < bsg.types.size(); ++t) {
    bsg.leader_utility.push_back(MatrixFrom(lu[t], "leader_utility", bsg.leader_actions.size(),
                                            bsg.follower_actions.size()));
    bsg.follower_utility.push_back(MatrixFrom(fu[t], "follower_utility",
                                              bsg.leader_actions.size(),
                                              bsg.follower_actions.size()));
  }
  bsg.Validate();
  return bsg;
}

Json BsgToJson(const BSGInstance& bsg) {
  Json out = Json::object();
  out["leader_actions"] = bsg.leader_actions;
  out["follower_actions"] = bsg.follower_actions;
  out["types"] = bsg.types;
  out["type_dist"] = bsg.type_dist;
  Json lu = Json::array();
  Json fu = Json::array();
  for (std::size_t t = 0; t < bsg.types.size(); ++t) {
    lu.push_back(MatrixJson(bsg.leader_utility[t]));
    fu.push_back(MatrixJson(bsg.follower_utility[t]));
  }
  out["leader_utility"] = lu;
  out["follower_utility"] = fu;
  return out;
}

BSGInstance LoadBsg(const std::string& path) { return BsgFromJson(ReadJsonFile(path)); }

std::vector<Framing> FramingsFromJson(const Json& j) {
  const Json& list = j.is_array() ? j : Field(j, "framings");
  std::vector<Framing> out;
  for (const auto& f : list) {
    out.push_back({Get<std::string>(f, "id", ""), As<std::string>(Field(f, "text"), "text")});
  }
  return out;
}

Json FramingsToJson(const std::vector<Framing>& framings) {
  Json out = Json::array();
  for (const auto& f : framings) out.push_back({{"id", f.id}, {"text", f.text}});
  return out;
}

std::map<std::string, Belief> BeliefTableFromJson(const Json& j) {
  if (!j.is_object()) throw ValidationError("belief table must map framing ids to beliefs");
  std::map<std::string, Belief> table;
  for (const auto& [id, probs] : j.items()) table.emplace(id, BeliefFromJson(probs));
  return table;
}

std::shared_ptr<const BeliefOracle> OracleFromJson(const Json& j) {
  const std::string kind = Kind(j);
  if (kind == "table") {
    const Json& table = Field(j, "table");
    if (table.is_string()) {
      return std::make_shared<TableOracle>(BeliefTableFromJson(ReadJsonFile(table.get<std::string>())));
    }
    return std::make_shared<TableOracle>(BeliefTableFromJson(table));
  }
  if (kind == "noisy") {
    return std::make_shared<NoisyOracle>(OracleFromJson(Field(j, "inner")),
                                         As<double>(Field(j, "epsilon"), "epsilon"),
                                         Get<std::uint64_t>(j, "seed", 0));
  }
  if (kind == "llm") {
    LlmOracleConfig config;
    config.model = Get<std::string>(j, "model", config.model);
    config.temperature = Get<double>(j, "temperature", config.temperature);
    config.prompt_template = TemplateText(j);
    config.keys = Strings(j, "keys");
    config.variables = Variables(j);
    config.repeats = Get<int>(j, "repeats", config.repeats);
    config.cache = Get<bool>(j, "cache", config.cache);
    return std::make_shared<LlmOracle>(std::move(config), ClientFromJson(j));
  }
  throw ValidationError("unknown oracle kind '" + kind + "'");
}

std::shared_ptr<const SoundnessScorer> ScorerFromJson(const Json& j) {
  const std::string kind = Kind(j);
  if (kind == "scripted") {
    std::vector<ScriptedScorer::Rule> rules;
    for (const auto& r : Get<Json>(j, "rules", Json::array())) {
      rules.push_back({As<std::string>(Field(r, "contains"), "contains"),
                       As<double>(Field(r, "score"), "score")});
    }
    return std::make_shared<ScriptedScorer>(std::move(rules));
  }
  if (kind == "llm") {
    return std::make_shared<LlmScorer>(PromptConfigFromJson(j), ClientFromJson(j));
  }
  throw ValidationError("unknown scorer kind '" + kind + "'");
}

std::unique_ptr<FramingGenerator> GeneratorFromJson(const Json& j) {
  const std::string kind = Kind(j);
  if (kind == "scripted") {
    return std::make_unique<ScriptedGenerator>(FramingsFromJson(Field(j, "framings")));
  }
  if (kind == "llm") {
    LlmGeneratorConfig config;
    config.prompt = PromptConfigFromJson(j);
    config.response_keys = Get<std::vector<std::string>>(j, "response_keys", {});
    return std::make_unique<LlmGenerator>(std::move(config), ClientFromJson(j));
  }
  throw ValidationError("unknown generator kind '" + kind + "'");
}

Json NormalizationToJson(const NormalizationRecord& record) {
  Json out = Json::object();
  out["sender_offset"] = record.sender_offset;
  out["sender_scale"] = record.sender_scale;
  out["receiver_offset"] = record.receiver_offset;
  out["receiver_scale"] = record.receiver_scale;
  return out;
}

Json SenderValueToJson(const Instance& instance, double normalized) {
  Json out = Json::object();
  out["normalized"] = normalized;
  out["raw"] = instance.normalization().SenderToRaw(normalized);
  return out;
}

Json JointSolutionToJson(const Instance& instance, const JointSolution& solution) {
  Json out = SchemeToJson(solution.scheme);
  out["states"] = instance.states();
  out["belief"] = solution.belief.vec();
  out["value"] = SenderValueToJson(instance, solution.sender_value);
  out["obedience_slack"] = solution.obedience_slack;
  out["normalization"] = NormalizationToJson(instance.normalization());
  return out;
}

Json RobustifiedToJson(const Instance& instance, const RobustifiedScheme& robust) {
  Json out = SchemeToJson(robust.scheme);
  out["states"] = instance.states();
  out["delta"] = robust.delta;
  out["y"] = robust.y;
  out["p0"] = robust.p0;
  out["margin"] = robust.margin;
  out["eps_bound"] = robust.eps_bound;
  out["loss_bound"] = robust.p0 > 0.0 ? 2.0 * robust.delta / robust.p0 : 0.0;
  out["chi"] = robust.chi.vec();
  out["action_value"] = SenderValueToJson(instance, robust.action_value);
  out["original_value"] = SenderValueToJson(instance, robust.original_value);
  out["normalization"] = NormalizationToJson(instance.normalization());
  return out;
}

Json DiscontinuityToJson(const Instance& instance, const SignalingScheme& scheme,
                         const DiscontinuityReport& r) {
  const auto& rec = instance.normalization();
  Json out = Json::object();
  out["found"] = true;
  out["indifference_belief"] = r.indifference_belief.vec();
  out["plus"] = r.plus.vec();
  out["minus"] = r.minus.vec();
  out["eps"] = r.eps;
  out["gap"] = {{"normalized", r.gap}, {"raw", r.gap * rec.sender_scale}};
  out["ladder_eps"] = kEpsLadder;
  out["ladder_gaps"] = r.ladder_gaps;
  out["signal"] = scheme.signals()[r.signal];
  out["actions"] = {instance.actions()[r.first_action], instance.actions()[r.second_action]};
  out["states"] = {instance.states()[r.first_state], instance.states()[r.second_state]};
  out["action_plus"] = instance.actions()[r.action_plus];
  out["action_minus"] = instance.actions()[r.action_minus];
  out["normalization"] = NormalizationToJson(rec);
  return out;
}

Json ProbeToJson(const ContinuityProbeReport& r) {
  Json out = Json::object();
  out["pairs"] = r.pairs;
  out["p0"] = r.p0;
  out["margin"] = r.margin;
  out["lipschitz_bound"] = r.lipschitz_bound;
  out["max_ratio"] = r.max_ratio;
  out["violations"] = r.violations;
  return out;
}

Json ValidationToJson(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"ok", report.ok()}, {"checks", checks}};
}

Json BsgSolutionToJson(const BSGInstance& bsg, const BSGSolution& solution) {
  Json profile = Json::object();
  for (std::size_t t = 0; t < solution.follower_profile.size(); ++t) {
    profile[bsg.types[t]] = bsg.follower_actions[solution.follower_profile[t]];
  }
  Json out = Json::object();
  out["leader_strategy"] = solution.leader_strategy;
  out["value"] = solution.value;
  out["follower_profile"] = profile;
  return out;
}

Json EnumerationToJson(const Instance& instance, const EnumerationResult& result) {
  Json rows = Json::array();
  for (const auto& row : result.table) {
    rows.push_back({{"framing_id", row.framing.id},
                    {"belief", row.belief.vec()},
                    {"utility", SenderValueToJson(instance, row.utility)}});
  }
  Json out = Json::object();
  out["best"] = result.best().framing.id;
  out["utility"] = SenderValueToJson(instance, result.utility);
  out["table"] = rows;
  out["normalization"] = NormalizationToJson(instance.normalization());
  return out;
}

Json IterationToJson(const Instance& instance, const IterationRecord& r) {
  Json out = Json::object();
  out["iteration"] = r.iteration;
  out["framing"] = {{"id", r.framing.id}, {"text", r.framing.text}};
  out["belief"] = LabelledBelief(instance.states(), r.belief);
  out["reasoning"] = r.reasoning;
  out["soundness"] = r.soundness;
  out["soundness_reasoning"] = r.soundness_reasoning;
  out["utility"] = SenderValueToJson(instance, r.utility);
  out["final_score"] = r.final_score;
  out["feedback"] = r.feedback;
  out["scheme"] = SchemeToJson(r.scheme);
  return out;
}

Json HillClimbToJson(const Instance& instance, const HillClimbResult& result) {
  Json trace = Json::array();
  for (const auto& r : result.trace) trace.push_back(IterationToJson(instance, r));
  Json out = Json::object();
  out["best_iteration"] = result.best.iteration;
  out["best"] = IterationToJson(instance, result.best);
  out["reverified_utility"] = SenderValueToJson(instance, result.reverified_utility);
  out["reverified_differs"] = result.reverified_differs;
  out["trace"] = trace;
  out["normalization"] = NormalizationToJson(instance.normalization());
  return out;
}

std::string CsvEscape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string EnumerationCsv(const Instance& instance, const EnumerationResult& result) {
  std::ostringstream os;
  os << "framing_id";
  for (const auto& s : instance.states()) os << ',' << CsvEscape(s);
  os << ",utility,utility_raw\n";
  for (const auto& row : result.table) {
    os << CsvEscape(row.framing.id);
    for (double p : row.belief.probs()) os << ',' << FormatNumber(p);
    os << ',' << FormatNumber(row.utility) << ','
       << FormatNumber(instance.normalization().SenderToRaw(row.utility)) << '\n';
  }
  return os.str();
}

std::string SweepCsv(const Instance& instance, const std::vector<SweepPoint>& curve) {
  std::ostringstream os;
  os << 't';
  for (const auto& s : instance.states()) os << ',' << CsvEscape(s);
  os << ",value,slack,value_raw\n";
  for (const auto& p : curve) {
    os << FormatNumber(p.t);
    for (double x : p.belief.probs()) os << ',' << FormatNumber(x);
    os << ',' << FormatNumber(p.value) << ',' << FormatNumber(p.slack) << ','
       << FormatNumber(instance.normalization().SenderToRaw(p.value)) << '\n';
  }
  return os.str();
}

std::string TraceCsv(const std::vector<IterationRecord>& trace) {
  std::ostringstream os;
  os << "iteration,soundness,utility,final_score\n";
  for (const auto& r : trace) {
    os << r.iteration << ',' << FormatNumber(r.soundness) << ',' << FormatNumber(r.utility) << ','
       << FormatNumber(r.final_score) << '\n';
  }
  return os.str();
}

}  // namespace framecraft::io
