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

// Command-line front end. Every subcommand loads its inputs, calls one
// library operation and prints the result.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "framecraft/bsg.hpp"
#include "framecraft/core.hpp"
#include "framecraft/error.hpp"
#include "framecraft/framing_only.hpp"
#include "framecraft/io.hpp"
#include "framecraft/joint.hpp"
#include "framecraft/optimizer.hpp"
#include "framecraft/presets.hpp"

namespace fc = framecraft;
using fc::io::Json;

namespace {

struct Globals {
  std::string format = "json";
  int jobs = 4;
  std::uint64_t seed = 0;
  std::string out;
};

// Flattens nested JSON into "path,value" rows.
void Flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) Flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      Flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else if (j.is_number_float()) {
    os << fc::io::CsvEscape(prefix) << ',' << fc::FormatNumber(j.get<double>()) << '\n';
  } else if (j.is_string()) {
    os << fc::io::CsvEscape(prefix) << ',' << fc::io::CsvEscape(j.get<std::string>()) << '\n';
  } else {
    os << fc::io::CsvEscape(prefix) << ',' << j.dump() << '\n';
  }
}

// Prints `json`, or `csv` when CSV is requested and the command has a table.
void Emit(const Globals& g, const Json& json, const std::string& csv = {}) {
  std::string text;
  if (g.format == "csv") {
    if (!csv.empty()) {
      text = csv;
    } else {
      std::ostringstream os;
      os << "key,value\n";
      Flatten(json, "", os);
      text = os.str();
    }
  } else {
    text = json.dump(2) + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
  } else {
    fc::io::WriteTextFile(g.out, text);
  }
}

fc::Execution Exec(const Globals& g) { return {g.jobs, g.jobs > 1}; }

fc::ConvexBeliefSet BeliefSet(const std::string& path, const fc::Instance& inst) {
  if (path.empty()) return fc::ConvexBeliefSet::FullSimplex(inst.num_states());
  return fc::io::LoadBeliefSet(path, inst.num_states());
}

Json WithNormalization(const fc::Instance& inst, Json j) {
  j["normalization"] = fc::io::NormalizationToJson(inst.normalization());
  return j;
}

void WritePreset(const fc::Preset& p, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  const auto write = [&](const char* name, const Json& j) {
    fc::io::WriteTextFile(path(name), j.dump(2) + "\n");
  };
  write("instance.json", fc::io::InstanceToJson(p.instance));
  if (p.scheme) write("scheme.json", fc::io::SchemeToJson(*p.scheme));
  if (!p.framings.empty()) write("framings.json", fc::io::FramingsToJson(p.framings));
  if (!p.belief_table.empty()) {
    Json table = Json::object();
    for (const auto& [id, b] : p.belief_table) table[id] = b.vec();
    write("oracle.json", {{"kind", "table"}, {"table", table}});
    std::vector<fc::Framing> ordered;
    for (const auto& f : p.framings) {
      if (p.belief_table.count(f.id)) ordered.push_back(f);
    }
    write("generator.json", {{"kind", "scripted"}, {"framings", fc::io::FramingsToJson(ordered)}});
    write("scorer.json", {{"kind", "scripted"}, {"rules", Json::array()}});
  }
  Json vars = Json::object();
  for (const auto& [k, v] : p.variables) vars[k] = v;
  if (!p.belief_template.empty()) {
    write("oracle_llm.json", {{"kind", "llm"},
                              {"template", p.belief_template},
                              {"keys", p.belief_keys},
                              {"variables", vars}});
  }
  if (!p.scorer_template.empty()) {
    write("scorer_llm.json", {{"kind", "llm"}, {"template", p.scorer_template}, {"variables", vars}});
  } else if (!p.belief_template.empty()) {
    write("scorer_llm.json", {{"kind", "scripted"}, {"rules", Json::array()}});
  }
  if (!p.generator_template.empty()) {
    write("generator_llm.json", {{"kind", "llm"},
                                 {"template", p.generator_template},
                                 {"response_keys", p.generator_keys},
                                 {"variables", vars}});
  }
  Json meta = Json::object();
  meta["name"] = p.name;
  meta["note"] = p.note;
  meta["context"] = p.context;
  meta["utility_label"] = p.utility_label;
  meta["normalization"] = fc::io::NormalizationToJson(p.instance.normalization());
  write("preset.json", meta);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information design with framing: solvers, reductions and framing search"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "structured-text", "csv"}));
  app.add_option("--jobs", g.jobs, "Worker threads for grid and lattice searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every randomized step");
  app.add_option("--out", g.out, "Write the result to this file instead of stdout");

  std::function<void()> run;
  std::string instance_path;
  std::string scheme_path;
  std::string belief_text;
  std::string belief_set_path;
  double eps = 0.0;

  const auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  };
  const auto add_scheme = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("scheme", scheme_path, "Signaling scheme file")->check(CLI::ExistingFile);
    if (required) opt->required();
  };

  // validate
  auto* validate = app.add_subcommand("validate", "Check prior support, utility range and inducibility");
  add_instance(validate);
  validate->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto report = fc::ValidateInstance(inst);
      const auto margin = fc::ComputeInducibilityMargin(inst);
      Json j = fc::io::ValidationToJson(report);
      j["margin"] = margin.margin;
      j["per_action_margin"] = margin.per_action;
      Emit(g, WithNormalization(inst, j));
      if (!report.ok()) throw fc::ValidationError(report.ToString());
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Optimal scheme for a fixed receiver belief");
  add_instance(solve);
  solve->add_option("--belief", belief_text, "Receiver belief (list, JSON or file)")->required();
  solve->add_option("--eps", eps, "Obedience slack")->check(CLI::Range(0.0, 1.0));
  solve->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto sol = fc::SolveOptimalScheme(inst, fc::io::ParseBeliefArgument(belief_text),
                                              fc::EpsilonObedience(eps));
      Emit(g, fc::io::JointSolutionToJson(inst, sol));
    };
  });

  // grid
  std::size_t resolution = 20;
  auto* grid = app.add_subcommand("grid", "Joint optimum over a belief lattice");
  add_instance(grid);
  grid->add_option("--resolution", resolution, "Lattice resolution")->check(CLI::PositiveNumber);
  grid->add_option("--belief-set", belief_set_path, "Half-space file; full simplex when omitted")
      ->check(CLI::ExistingFile);
  grid->add_option("--eps", eps, "Obedience slack")->check(CLI::Range(0.0, 1.0));
  grid->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto sol = fc::JointOptimizeGrid(inst, BeliefSet(belief_set_path, inst), resolution,
                                             fc::EpsilonObedience(eps), Exec(g));
      Emit(g, fc::io::JointSolutionToJson(inst, sol));
    };
  });

  // qptas
  auto* qptas = app.add_subcommand("qptas", "Lattice search with eps-obedience");
  add_instance(qptas);
  qptas->add_option("--eps", eps, "Approximation parameter")->required()->check(CLI::Range(1e-6, 0.999999));
  qptas->add_option("--belief-set", belief_set_path, "Half-space file")->check(CLI::ExistingFile);
  qptas->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto sol = fc::Qptas(inst, BeliefSet(belief_set_path, inst), eps, Exec(g));
      Json j = fc::io::JointSolutionToJson(inst, sol);
      j["resolution"] = fc::QptasResolution(inst.num_actions(), eps);
      Emit(g, j);
    };
  });

  // bicriteria
  auto* bicriteria = app.add_subcommand("bicriteria", "Concentrated-belief construction");
  add_instance(bicriteria);
  bicriteria->add_option("--eps", eps, "Obedience slack")->required()->check(CLI::Range(1e-9, 0.999999));
  bicriteria->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto sol = fc::BiCriteriaUnconstrained(inst, eps);
      Json j = fc::io::JointSolutionToJson(inst, sol);
      const double u_max = fc::FullInformationSenderValue(inst);
      j["full_information_value"] = fc::io::SenderValueToJson(inst, u_max);
      j["guarantee"] = fc::io::SenderValueToJson(
          inst, (1.0 - 1.0 / static_cast<double>(inst.num_states())) * u_max);
      Emit(g, j);
    };
  });

  // state-independent
  auto* state_ind = app.add_subcommand("state-independent", "Exact optimum for state-independent sender utility");
  add_instance(state_ind);
  state_ind->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      Emit(g, fc::io::JointSolutionToJson(inst, fc::StateIndependentOptimal(inst)));
    };
  });

  // sweep
  std::string from_text;
  std::string to_text;
  std::size_t steps = 201;
  auto* sweep = app.add_subcommand("sweep", "U* along a segment of beliefs");
  add_instance(sweep);
  sweep->add_option("--from", from_text, "Start belief")->required();
  sweep->add_option("--to", to_text, "End belief")->required();
  sweep->add_option("--steps", steps, "Number of points")->check(CLI::Range(2, 10'000'000));
  sweep->add_option("--eps", eps, "Obedience slack")->check(CLI::Range(0.0, 1.0));
  sweep->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto curve =
          fc::SweepUtility(inst, fc::io::ParseBeliefArgument(from_text),
                           fc::io::ParseBeliefArgument(to_text), steps, fc::EpsilonObedience(eps), Exec(g));
      Json pts = Json::array();
      for (const auto& p : curve) {
        pts.push_back({{"t", p.t},
                       {"belief", p.belief.vec()},
                       {"value", fc::io::SenderValueToJson(inst, p.value)},
                       {"slack", p.slack}});
      }
      Emit(g, WithNormalization(inst, {{"points", pts}}), fc::io::SweepCsv(inst, curve));
    };
  });

  // discontinuity
  auto* disc = app.add_subcommand("discontinuity", "Search for a jump of the fixed-scheme utility");
  add_instance(disc);
  add_scheme(disc, true);
  disc->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto scheme = fc::io::LoadScheme(scheme_path);
      const auto report = fc::FindDiscontinuity(inst, scheme);
      if (report) {
        Emit(g, fc::io::DiscontinuityToJson(inst, scheme, *report));
      } else {
        Emit(g, WithNormalization(inst, {{"found", false}}));
      }
    };
  });

  // robustify
  auto* robust = app.add_subcommand("robustify", "Make an obedient direct scheme robust to belief error");
  add_instance(robust);
  add_scheme(robust, false);
  robust->add_option("--belief", belief_text, "Belief the scheme is obedient at")->required();
  robust->add_option("--eps", eps, "Radius of the l1 ball")->required()->check(CLI::Range(0.0, 1.0));
  robust->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto mu = fc::io::ParseBeliefArgument(belief_text);
      const auto scheme = scheme_path.empty() ? fc::SolveOptimalScheme(inst, mu).scheme
                                              : fc::io::LoadScheme(scheme_path);
      Emit(g, fc::io::RobustifiedToJson(inst, fc::RobustifyScheme(inst, mu, scheme, eps)));
    };
  });

  // probe
  std::size_t pairs = 500;
  double p0 = 0.05;
  auto* probe = app.add_subcommand("probe", "Sample the Lipschitz bound of U*");
  add_instance(probe);
  probe->add_option("--pairs", pairs, "Number of belief pairs")->check(CLI::PositiveNumber);
  probe->add_option("--p0", p0, "Half of the smallest belief entry")->check(CLI::Range(1e-9, 0.5));
  probe->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      Emit(g, WithNormalization(inst, fc::io::ProbeToJson(fc::ContinuityProbe(inst, pairs, p0, g.seed, Exec(g)))));
    };
  });

  // framing-grid
  auto* fgrid = app.add_subcommand("framing-grid", "Best receiver belief for a fixed scheme (dense grid, up to 3 states)");
  add_instance(fgrid);
  add_scheme(fgrid, true);
  fgrid->add_option("--resolution", resolution, "Lattice resolution")->check(CLI::PositiveNumber);
  fgrid->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto scheme = fc::io::LoadScheme(scheme_path);
      const auto opt = fc::SolveFramingExactSmall(inst, scheme, resolution, Exec(g));
      Json profile = Json::array();
      for (auto a : opt.response_profile) profile.push_back(inst.actions()[a]);
      Emit(g, WithNormalization(inst, {{"belief", opt.belief.vec()},
                                       {"value", fc::io::SenderValueToJson(inst, opt.value)},
                                       {"response_profile", profile}}));
    };
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reductions between framing and Stackelberg games");
  reduce->require_subcommand(1);
  std::string bsg_path;
  auto* to_bsg = reduce->add_subcommand("to-bsg", "Fixed-scheme framing problem to a Stackelberg game");
  add_instance(to_bsg);
  add_scheme(to_bsg, true);
  to_bsg->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      Emit(g, fc::io::BsgToJson(fc::ReduceFramingToBsg(inst, fc::io::LoadScheme(scheme_path))));
    };
  });
  auto* from_bsg = reduce->add_subcommand("from-bsg", "Hard-family Stackelberg game to a framing problem");
  from_bsg->add_option("bsg", bsg_path, "Stackelberg game file")->required()->check(CLI::ExistingFile);
  from_bsg->add_option("--eps", eps, "Reduction parameter")->required()->check(CLI::Range(1e-9, 0.999999));
  from_bsg->callback([&] {
    run = [&] {
      const auto red = fc::ReduceBsgToFraming(fc::io::LoadBsg(bsg_path), eps);
      Json c = {{"eps", red.constants.eps}, {"L", red.constants.L}, {"N", red.constants.N},
                {"K", red.constants.K},     {"M", red.constants.M}, {"v_max", red.constants.v_max},
                {"p_min", red.constants.p_min}};
      Emit(g, {{"instance", fc::io::InstanceToJson(red.instance)},
               {"scheme", fc::io::SchemeToJson(red.scheme)},
               {"constants", c},
               {"normalization", fc::io::NormalizationToJson(red.instance.normalization())}});
    };
  });

  // solve-bsg
  auto* solve_bsg = app.add_subcommand("solve-bsg", "Exact Stackelberg equilibrium by multiple LPs");
  solve_bsg->add_option("bsg", bsg_path, "Stackelberg game file")->required()->check(CLI::ExistingFile);
  solve_bsg->callback([&] {
    run = [&] {
      const auto bsg = fc::io::LoadBsg(bsg_path);
      Emit(g, fc::io::BsgSolutionToJson(bsg, fc::SolveBsgExact(bsg, Exec(g))));
    };
  });

  // enumerate
  std::string space_path;
  std::string oracle_path;
  std::string context;
  int concurrency = 4;
  auto* enumerate = app.add_subcommand("enumerate", "Evaluate every framing of a finite space");
  add_instance(enumerate);
  add_scheme(enumerate, true);
  enumerate->add_option("--space", space_path, "Framings file")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--oracle", oracle_path, "Oracle configuration")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--context", context, "Instance description passed to the oracle");
  enumerate->add_option("--concurrency", concurrency, "Concurrent oracle queries")->check(CLI::PositiveNumber);
  enumerate->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto scheme = fc::io::LoadScheme(scheme_path);
      const fc::DiscreteFramingSpace space(fc::io::FramingsFromJson(fc::io::ReadJsonFile(space_path)));
      const auto oracle = fc::io::OracleFromJson(fc::io::ReadJsonFile(oracle_path));
      const auto result = fc::EnumerateFramings(space, *oracle, inst, scheme, context, concurrency);
      Emit(g, fc::io::EnumerationToJson(inst, result), fc::io::EnumerationCsv(inst, result));
    };
  });

  // optimize
  std::string mode = "joint";
  std::string generator_path;
  std::string scorer_path;
  std::string trace_json;
  std::string utility_label = "utility";
  std::size_t iters = 10;
  std::size_t plateau = 0;
  auto* optimize = app.add_subcommand("optimize", "Hill-climbing framing search");
  add_instance(optimize);
  optimize->add_option("--scheme", scheme_path, "Fixed scheme (mode fixed)")->check(CLI::ExistingFile);
  optimize->add_option("--mode", mode, "joint or fixed")->check(CLI::IsMember({"joint", "fixed"}));
  optimize->add_option("--oracle", oracle_path, "Oracle configuration")->required()->check(CLI::ExistingFile);
  optimize->add_option("--generator", generator_path, "Generator configuration")->required()->check(CLI::ExistingFile);
  optimize->add_option("--scorer", scorer_path, "Scorer configuration")->required()->check(CLI::ExistingFile);
  optimize->add_option("--iters", iters, "Iteration budget")->check(CLI::PositiveNumber);
  optimize->add_option("--plateau", plateau, "Stop after this many iterations without improvement");
  optimize->add_option("--eps", eps, "Obedience slack (joint mode)")->check(CLI::Range(0.0, 1.0));
  optimize->add_option("--context", context, "Instance description passed to every component");
  optimize->add_option("--utility-label", utility_label, "Label of the utility line in the feedback");
  optimize->add_option("--trace-json", trace_json, "Also write the full trace as JSON");
  optimize->callback([&] {
    run = [&] {
      const auto inst = fc::io::LoadInstance(instance_path);
      const auto oracle = fc::io::OracleFromJson(fc::io::ReadJsonFile(oracle_path));
      const auto scorer = fc::io::ScorerFromJson(fc::io::ReadJsonFile(scorer_path));
      auto generator = fc::io::GeneratorFromJson(fc::io::ReadJsonFile(generator_path));
      fc::OptimizerConfig config;
      config.max_iterations = iters;
      config.mode = mode == "joint" ? fc::SearchMode::kJoint : fc::SearchMode::kFramingOnly;
      config.eps = fc::EpsilonObedience(eps);
      config.plateau_window = plateau;
      config.seed = g.seed;
      config.utility_label = utility_label;
      config.context = context;
      std::optional<fc::SignalingScheme> scheme;
      if (!scheme_path.empty()) scheme = fc::io::LoadScheme(scheme_path);
      try {
        const auto result = fc::HillClimb(inst, *oracle, *scorer, *generator, config, scheme);
        const Json j = fc::io::HillClimbToJson(inst, result);
        if (!trace_json.empty()) fc::io::WriteTextFile(trace_json, j.dump(2) + "\n");
        Emit(g, j, fc::io::TraceCsv(result.trace));
      } catch (const fc::HillClimbError& e) {
        if (!trace_json.empty()) {
          Json partial = Json::array();
          for (const auto& r : e.partial_trace()) partial.push_back(fc::io::IterationToJson(inst, r));
          fc::io::WriteTextFile(trace_json, Json{{"error", e.what()}, {"trace", partial}}.dump(2) + "\n");
        }
        throw;
      }
    };
  });

  // preset
  std::string preset_name;
  std::string preset_dir;
  auto* preset = app.add_subcommand("preset", "Write a bundled instance and its companion files");
  preset->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(fc::PresetNames()));
  preset->add_option("--dir", preset_dir, "Output directory (default: the preset name)");
  preset->callback([&] {
    run = [&] {
      const auto p = fc::LoadPreset(preset_name);
      const std::string dir = preset_dir.empty() ? preset_name : preset_dir;
      WritePreset(p, dir);
      const auto report = fc::ValidateInstance(p.instance);
      Emit(g, WithNormalization(p.instance, {{"preset", p.name},
                                             {"dir", dir},
                                             {"note", p.note},
                                             {"validation", fc::io::ValidationToJson(report)}}));
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
