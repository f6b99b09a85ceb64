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

#ifndef FRAMECRAFT_PRESETS_HPP_
#define FRAMECRAFT_PRESETS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framecraft/oracle.hpp"
#include "framecraft/types.hpp"

namespace framecraft {

// A bundled instance with everything needed to run the CLI on it.
struct Preset {
  std::string name;
  std::string note;  // where the numbers come from
  Instance instance;
  std::optional<SignalingScheme> scheme;
  std::map<std::string, Belief> belief_table;  // framing id -> belief
  std::vector<Framing> framings;
  std::string context;                         // instance description for prompts
  // LLM prompt wiring: bundled template names and their variables.
  std::string belief_template;
  std::string scorer_template;
  std::string generator_template;
  std::vector<std::string> belief_keys;
  std::vector<std::string> generator_keys;
  std::map<std::string, std::string> variables;
  std::string utility_label = "utility";
};

std::vector<std::string> PresetNames();
// Throws ValidationError for an unknown name.
Preset LoadPreset(const std::string& name);

// Individual instances, for tests and benchmarks.
Instance ProsecutorInstance();
SignalingScheme ProsecutorScheme();
Instance Example1Instance();
Instance HenryInstance();
Instance LillyInstance();
Instance AdvertisingInstance();

}  // namespace framecraft

#endif  // FRAMECRAFT_PRESETS_HPP_
