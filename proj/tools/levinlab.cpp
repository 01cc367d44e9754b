// levinlab: experiment driver.
//
//   levinlab <recipe> [--config file] [--out dir] [--format json|csv|both] [--workers N]
//   levinlab all ...
//   levinlab search --goal exact:11 --metric time --max-phase 40 [--units file]
//   levinlab complexity --input 11 --budget bits=16,steps=256 [--units file]
//   levinlab limits --landauer 300 --ml 1 --corollary 1e120,1
//   levinlab run --program "0010 0111 1111" [--input bits] [--steps N] [--trace]
//   levinlab graph --program ... [--input bits] [--steps N]
//   levinlab operator --pairs file --budget bits=24,steps=256 --query 1
//   levinlab config

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "levinlab/complexity.hpp"
#include "levinlab/config.hpp"
#include "levinlab/costgraph.hpp"
#include "levinlab/induction.hpp"
#include "levinlab/recipes.hpp"
#include "levinlab/refmachine.hpp"
#include "levinlab/search.hpp"

namespace ll = levinlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A program argument is either program text or a path to a file holding it.
ll::Program load_program(const std::string& arg) {
  std::ifstream in(arg);
  if (in) return ll::parse_program_text(read_file(arg));
  return ll::parse_program_text(arg);
}

struct RecipeFlags {
  std::string config;
  std::string out;
  std::string format;
  unsigned workers = 0;
};

void add_recipe_flags(CLI::App* cmd, RecipeFlags& f) {
  cmd->add_option("--config", f.config, "workbench config file (key = value)");
  cmd->add_option("--out", f.out, "report directory (overrides output.dir)");
  cmd->add_option("--format", f.format, "json, csv or both (overrides output.format)")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_option("--workers", f.workers, "worker threads (overrides workers)");
}

ll::WorkbenchConfig resolve_config(const RecipeFlags& f) {
  ll::WorkbenchConfig c = f.config.empty() ? ll::WorkbenchConfig{} : ll::WorkbenchConfig::load(f.config);
  if (!f.out.empty()) c.output_dir = f.out;
  if (!f.format.empty()) c.output_format = ll::parse_report_format(f.format);
  if (f.workers > 0) c.workers = f.workers;
  return c;
}

int run_recipes(const std::vector<std::string>& names, const ll::WorkbenchConfig& config) {
  int failed = 0;
  for (const auto& name : names) {
    const auto result = ll::run_experiment(name, config);
    for (const auto& a : result.report.assertions) {
      std::cout << (a.pass ? "PASS " : "FAIL ") << name << ": " << a.name;
      if (!a.detail.empty()) std::cout << " (" << a.detail << ")";
      std::cout << '\n';
    }
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    if (!result.report.passed()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

ll::UnitSystem load_units(const std::string& path) {
  return path.empty() ? ll::WorkbenchConfig{}.units : ll::WorkbenchConfig::load(path).units;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levinlab: Levin search and algorithmic-probability workbench"};
  app.set_version_flag("--version", std::string(LEVINLAB_VERSION));
  app.require_subcommand(1);

  // Recipes.
  std::vector<std::pair<std::string, std::unique_ptr<RecipeFlags>>> recipe_cmds;
  for (const auto& name : ll::recipe_names()) {
    if (name == "limits") continue;  // shares its verb with the calculator below
    auto flags = std::make_unique<RecipeFlags>();
    auto* cmd = app.add_subcommand(name, std::string(ll::recipe_summary(name)));
    add_recipe_flags(cmd, *flags);
    recipe_cmds.emplace_back(name, std::move(flags));
  }
  RecipeFlags all_flags;
  auto* all_cmd = app.add_subcommand("all", "run every recipe");
  add_recipe_flags(all_cmd, all_flags);

  // limits: recipe unless a calculator flag is given.
  RecipeFlags limits_flags;
  std::optional<double> landauer_t, ml_e;
  std::string corollary;
  auto* limits_cmd = app.add_subcommand("limits", std::string(ll::recipe_summary("limits")));
  add_recipe_flags(limits_cmd, limits_flags);
  limits_cmd->add_option("--landauer", landauer_t, "temperature in kelvin");
  limits_cmd->add_option("--ml", ml_e, "average energy in joules");
  limits_cmd->add_option("--corollary", corollary, "OPS,LV");

  std::string goal_spec, metric_name = "time", units_path;
  std::uint32_t max_phase = 40;
  auto* search_cmd = app.add_subcommand("search", "Levin search for a goal");
  search_cmd->add_option("--goal", goal_spec, "prefix:BITS | exact:BITS | cpdf:q=p,...")
      ->required();
  search_cmd->add_option("--metric", metric_name, "time|volume|energy|total-energy");
  search_cmd->add_option("--max-phase", max_phase, "last phase to run");
  search_cmd->add_option("--units", units_path, "config file supplying units.*");

  std::string input_bits, budget_spec = "bits=16,steps=256";
  auto* complexity_cmd = app.add_subcommand("complexity", "entropy estimates for a bit string");
  complexity_cmd->add_option("--input", input_bits, "subject bits")->required();
  complexity_cmd->add_option("--budget", budget_spec, "bits=N,steps=M[,dovetail=K]");
  complexity_cmd->add_option("--units", units_path, "config file supplying units.*");

  std::string program_arg, run_input;
  std::uint64_t steps = 256;
  bool with_trace = false;
  auto* run_cmd = app.add_subcommand("run", "run one program");
  run_cmd->add_option("--program", program_arg, "program bits/hex or a file")->required();
  run_cmd->add_option("--input", run_input, "input bits");
  run_cmd->add_option("--steps", steps, "step budget");
  run_cmd->add_flag("--trace", with_trace, "include the execution trace");

  auto* graph_cmd = app.add_subcommand("graph", "export the cost graph of one run as JSON");
  graph_cmd->add_option("--program", program_arg, "program bits/hex or a file")->required();
  graph_cmd->add_option("--input", run_input, "input bits");
  graph_cmd->add_option("--steps", steps, "step budget");
  graph_cmd->add_option("--units", units_path, "config file supplying units.*");

  std::string pairs_path;
  std::vector<std::string> queries;
  unsigned op_workers = 1;
  auto* operator_cmd = app.add_subcommand("operator", "operator induction from a pairs file");
  operator_cmd->add_option("--pairs", pairs_path, "lines q_bits<TAB>a_bit")->required();
  operator_cmd->add_option("--budget", budget_spec, "bits=N,steps=M");
  operator_cmd->add_option("--query", queries, "questions to predict");
  operator_cmd->add_option("--workers", op_workers, "worker threads");

  std::string config_path;
  auto* config_cmd = app.add_subcommand("config", "print the effective configuration");
  config_cmd->add_option("--config", config_path, "config file to normalize");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, flags] : recipe_cmds) {
      if (app.got_subcommand(name)) return run_recipes({name}, resolve_config(*flags));
    }
    if (all_cmd->parsed()) return run_recipes(ll::recipe_names(), resolve_config(all_flags));

    if (limits_cmd->parsed()) {
      if (!landauer_t && !ml_e && corollary.empty()) {
        return run_recipes({"limits"}, resolve_config(limits_flags));
      }
      const ll::UnitSystem units = resolve_config(limits_flags).units;
      nlohmann::ordered_json j;
      if (landauer_t) {
        j["landauer"] = {{"temperature_K", *landauer_t},
                         {"joules_per_bit", ll::landauer_limit(*landauer_t, units)}};
      }
      if (ml_e) {
        j["margolus_levitin"] = {{"energy_J", *ml_e},
                                 {"ops_per_s", ll::margolus_levitin_ops(*ml_e, units)},
                                 {"quoted_ops_per_joule", ll::kQuotedOpsPerJoule}};
      }
      if (!corollary.empty()) {
        const auto comma = corollary.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--corollary expects OPS,LV");
        const double ops = std::stod(corollary.substr(0, comma));
        const double lv = std::stod(corollary.substr(comma + 1));
        j["corollary"] = {{"op_budget", ops},
                          {"logical_volume", lv},
                          {"max_complexity_bits", ll::max_learnable_complexity(ops, lv)}};
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (search_cmd->parsed()) {
      ll::SearchOptions options;
      options.units = load_units(units_path);
      const auto out = ll::levin_search(ll::Goal::parse(goal_spec), ll::parse_metric(metric_name),
                                        max_phase, options);
      auto j = out.to_json();
      j["sandwich"] = ll::verify_sandwich(out).to_json();
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (complexity_cmd->parsed()) {
      const auto report = ll::complexity_report(ll::BitString(input_bits),
                                                ll::EnumerationBudget::parse(budget_spec),
                                                load_units(units_path));
      std::cout << report.to_json().dump(2) << '\n';
      return 0;
    }

    if (run_cmd->parsed()) {
      const ll::Program p = load_program(program_arg);
      const ll::BitString input(run_input);
      const auto r = ll::run(p, input, steps);
      nlohmann::ordered_json j;
      j["program"] = p.bits().grouped();
      j["glyphs"] = p.glyphs();
      j["status"] = std::string(ll::to_string(r.status));
      j["steps"] = r.steps;
      j["output"] = r.output.str();
      if (with_trace) {
        j["trace"] = nlohmann::ordered_json::array();
        for (const auto& e : r.trace) {
          j["trace"].push_back({{"step", e.step},
                                {"op", std::string(ll::mnemonic(e.op))},
                                {"cell", e.cell},
                                {"before", e.before},
                                {"after", e.after}});
        }
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (graph_cmd->parsed()) {
      const ll::Program p = load_program(program_arg);
      const ll::BitString input(run_input);
      const auto r = ll::run(p, input, steps);
      const auto g = ll::build_graph(r.trace, input.size());
      nlohmann::ordered_json j;
      j["graph"] = ll::to_json(g);
      j["resources"] = ll::to_json(ll::measure(g, load_units(units_path)));
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (operator_cmd->parsed()) {
      const auto pairs = ll::parse_pairs(read_file(pairs_path));
      const auto budget = ll::EnumerationBudget::parse(budget_spec);
      const auto fit = ll::operator_fit(pairs, budget, op_workers);
      auto j = fit.to_json();
      j["predictions"] = nlohmann::ordered_json::array();
      for (const auto& q : queries) {
        const auto pred = ll::operator_predict(fit.models, ll::BitString(q), budget.step_budget);
        j["predictions"].push_back({{"query", q},
                                    {"normalized", ll::to_json(pred.normalized)},
                                    {"raw", ll::to_json(pred.raw)},
                                    {"approx", ll::to_double(pred.normalized)},
                                    {"undefined_models", pred.undefined_models}});
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (config_cmd->parsed()) {
      const auto c = config_path.empty() ? ll::WorkbenchConfig{} : ll::WorkbenchConfig::load(config_path);
      std::cout << c.serialize();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "levinlab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
