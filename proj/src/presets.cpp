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

#include "framecraft/presets.hpp"

#include "framecraft/error.hpp"

namespace framecraft {
namespace {

const char* const kRealtorProfile =
    "Jeremy Hammond is Male and 42. Worked with the our firm for 2 years, Worked previously as "
    "a realtor for 6 years, and a contractor before that. Lives with his wife and 3 kids and a "
    "dog and a cat in Downtown Boston. Hobbies include playing the drums, spending time with "
    "kids, hiking, and backyard gardening. Active member of his Home Owner's Association.";

const char* const kHenryDesc =
    "Henry lives in Boston and is an avid outdoors person who enjoys hiking and being in "
    "nature. For him, a \"good\" house has low maintenance, affords easy access to trails, "
    "biking, running etc, and far from hustle of the main city. He is single and lives by "
    "himself - so he is indifferent to school districts, etc. A bad house is generally one in a "
    "very family-oriented neighborhood with stingy HOA rules, maintenance, lawn care expectations "
    "and so on. For him, cheap is anything less that costs less $500,000, with expensive being "
    "houses above this.";

const char* const kLillyDesc =
    "Lilly is moving to Boston with her husband, 3 young kids and a dog. She and her family are "
    "looking for a spacious house in the suburbs with good schools for their kids, a nice yard "
    "for her dog, and friendly community-focused neighbours. This is what constitutes a \"good\" "
    "house for her. Smaller homes, those in not-so-great school zones, or those in busy and loud "
    "areas of the city near Downtown are \"bad\" in her eyes. For them, anything costing less "
    "that $650,000 is considered cheap, with those above considered expensive.";

const char* const kTargetDemographic =
    "Our new target demographic are fashion-aware average mall consumers, who are casually into "
    "an active lifestyle. They are middle class, but are willing to pay a slight premium for "
    "quality and style. This is a segment that the athleisure market has dominated of late, with "
    "brands like Lululemon, Nike being the main players. Consumers here like the idea of "
    "performance wear (e.g., for hiking or skiing) but are not deeply familiar with or motivated "
    "by technical characteristics. What matters most is whether the clothes looks stylish in "
    "everyday environments like schools, cafés, or city streets. Functionality and "
    "durability is a nice bonus, but aesthetic appeal primarily drives their interest.";

const char* const kBrandDescription =
    "Himalaya is fairly well known brand in the outdoor enthusiast, mountaineering, and "
    "adventure community. It has a reputation for bulletproof build quality and performance, and "
    "valuing sustainability. It is launching a new outerware line, that includes parkas, "
    "ski-jackets and ski-pants, windbreakers, and thermal layers. All products here are made "
    "with 100% postconsumer recycled nylon ripstop and without PFAS. They meet H2No Performance "
    "Standard for waterproofness and breathability. Fabric and inner membrace have durable water "
    "repellent (DWR) finish.";

const char* const kPatagoniaFraming =
    "Build the best product.\nWhether you’re seeking boulders and alpine views or stalking "
    "rainbow trout, this low-profile, waterproof jacket will keep you dry and provide rain "
    "protection from the fork in the trail to the places less traveled, and back again. This "
    "3-layer shell meets our H2No® Performance Standard for exceptional "
    "waterproof/breathable protection, and the fabric, membrane, and durable water repellent "
    "(DWR) finish are made without intentionally added PFAS.";

const std::vector<std::string> kHouseStates = {"good_cheap", "good_expensive", "bad_cheap",
                                               "bad_expensive"};

Instance RealtorInstance(std::vector<double> prior) {
  const Matrix u = Matrix::FromRows({{0, 0, 0, 0}, {-0.25, 1, -0.5, 0.75}});
  const Matrix v = Matrix::FromRows({{-1, 0, 0, 0}, {0.75, -0.25, 0.25, -3}});
  return Instance::FromRaw(kHouseStates, {"not_buy", "buy"}, Belief(std::move(prior)), u, v);
}

Preset RealtorPreset(const std::string& name, const std::string& buyer, const char* desc,
                     std::vector<double> prior) {
  Preset p;
  p.name = name;
  p.note = "Real-estate case study: realtor Jeremy and buyer " + buyer +
           ". Utilities are raw; reported values are min-max normalized.";
  p.instance = RealtorInstance(std::move(prior));
  p.framings = {{"profile", kRealtorProfile}};
  p.context = std::string("REALTOR_PROFILE: ") + kRealtorProfile + "\nBUYER_DESC: " + desc;
  p.belief_template = "belief_realtor";
  p.scorer_template = "soundness_realtor";
  p.generator_template = "generate_realtor";
  p.belief_keys = kHouseStates;
  p.generator_keys = {"REALTOR_DESC"};
  p.variables = {{"buyer_name", buyer}, {"buyer_desc", desc}, {"realtor_profile", kRealtorProfile}};
  p.utility_label = "realtor_utility";
  return p;
}

}  // namespace

Instance ProsecutorInstance() {
  const Matrix u = Matrix::FromRows({{0, 0}, {1, 1}});
  const Matrix v = Matrix::FromRows({{1, 0}, {0, 1}});
  return Instance::FromRaw({"innocent", "guilty"}, {"acquit", "convict"}, Belief({0.67, 0.33}), u,
                           v);
}

SignalingScheme ProsecutorScheme() {
  return SignalingScheme({"acquit", "convict"}, Matrix::FromRows({{0.5, 0.5}, {0.0, 1.0}}));
}

Instance Example1Instance() {
  const Matrix u = Matrix::FromRows({{0, 1}, {1, 0}, {0.2, 0.2}});
  const Matrix v = Matrix::FromRows({{0.65, 0.15}, {0.6, 0.3}, {0.1, 0.5}});
  return Instance::FromRaw({"w1", "w2"}, {"a1", "a2", "a3"}, Belief({1.0 / 3.0, 2.0 / 3.0}), u, v);
}

Instance HenryInstance() { return RealtorInstance({0.1, 0.35, 0.3, 0.25}); }
Instance LillyInstance() { return RealtorInstance({0.2, 0.4, 0.1, 0.3}); }

Instance AdvertisingInstance() {
  // Cell (buy_on_sale, trendy_durable) never occurs; its value is ignored.
  const Matrix u = Matrix::FromRows({{0, 1, 0.3, 0.8}, {2.5, 2, 1.0, 0.5}, {0, 0, 0, 0}});
  const Matrix v = Matrix::FromRows({{0, 1, 0, -0.5}, {1, 0.6, -1, -1}, {0, 0, 0, 0}});
  return Instance::FromRaw({"trendy_durable", "trendy_not_durable", "not_trendy_durable",
                            "not_trendy_not_durable"},
                           {"buy_on_sale", "buy_regular", "not_buy"},
                           Belief({0.225, 0.125, 0.5, 0.15}), u, v, {{0, 0}});
}

std::vector<std::string> PresetNames() {
  return {"prosecutor", "example1", "henry", "lilly", "advertising"};
}

Preset LoadPreset(const std::string& name) {
  if (name == "prosecutor") {
    Preset p;
    p.name = name;
    p.note =
        "Prosecutor and judge. The judge gets 1 for the just verdict, the prosecutor 1 for a "
        "conviction. The scheme convicts every guilty defendant and half of the innocent ones.";
    p.instance = ProsecutorInstance();
    p.scheme = ProsecutorScheme();
    p.belief_table = {{"neutral", Belief({0.67, 0.33})},
                      {"stern", Belief({2.0 / 3.0, 1.0 / 3.0})},
                      {"lenient", Belief({0.8, 0.2})}};
    p.framings = {{"neutral", "The evidence is presented without commentary."},
                  {"lenient", "The defendant has a spotless record and strong alibis."},
                  {"stern", "Crimes of this kind have been rising in the district."}};
    p.context = "A prosecutor addresses a judge before a verdict.";
    return p;
  }
  if (name == "example1") {
    Preset p;
    p.name = name;
    p.note = "Two states, three actions; U* along the edge is continuous but neither convex, "
             "concave nor quasi-concave.";
    p.instance = Example1Instance();
    return p;
  }
  if (name == "henry") return RealtorPreset(name, "Henry", kHenryDesc, {0.1, 0.35, 0.3, 0.25});
  if (name == "lilly") return RealtorPreset(name, "Lilly", kLillyDesc, {0.2, 0.4, 0.1, 0.3});
  if (name == "advertising") {
    Preset p;
    p.name = name;
    p.note = "Outerwear advertising case study. The (buy_on_sale, trendy_durable) cell is "
             "forbidden: trendy durable products are never on sale.";
    p.instance = AdvertisingInstance();
    p.framings = {{"incumbent", kPatagoniaFraming}};
    p.context = std::string("BRAND DESC: ") + kBrandDescription +
                "\nDEMOGRAPHIC DESC: " + kTargetDemographic;
    p.belief_template = "belief_advertising";
    p.generator_template = "generate_advertising";
    p.belief_keys = {"trendy_more_durable", "trendy_less_durable", "not_trendy_more_durable",
                     "not_trendy_less_durable"};
    p.generator_keys = {"BRAND MOTTO", "PRODUCT LINE DESC"};
    p.variables = {{"target_demographic", kTargetDemographic}, {"brand_desc", kBrandDescription}};
    p.utility_label = "brand utility";
    return p;
  }
  std::string names;
  for (const auto& n : PresetNames()) names += (names.empty() ? "" : ", ") + n;
  throw ValidationError("unknown preset '" + name + "' (known: " + names + ")");
}

}  // namespace framecraft
