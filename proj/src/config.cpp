#include "cliquelab/config.hpp"

#include <algorithm>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliquelab/io.hpp"

namespace cliquelab {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "verify-lemma3",     "verify-lemma4",      "verify-claim7",
      "verify-z-oracle",   "enumerate-maximal",  "verify-clique-cnf",
      "verify-distributions", "run-pipeline",    "theorem1-experiment"};
  return cmds;
}

std::vector<std::string> validate_config(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
    errors.push_back("command: unknown command '" + c.command + "'");
  if (c.n < 2) errors.push_back("n: must be >= 2");
  if (c.k < 2) errors.push_back("k: must be >= 2");
  if (c.s < 1) errors.push_back("s: must be >= 1");
  if (c.t < 1) errors.push_back("t: must be >= 1");
  if (c.cd < 0) errors.push_back("cd: must be >= 0");
  if (c.cs < 0) errors.push_back("cs: must be >= 0");
  if (c.p < 0.0 || c.p > 1.0) errors.push_back("p: must lie in [0,1]");
  if (c.instances < 0) errors.push_back("instances: must be >= 0");
  if (c.max_clauses < 1) errors.push_back("max-clauses: must be >= 1");
  if (c.budget_nodes == 0) errors.push_back("budget-nodes: must be positive");
  if (c.budget_ttable == 0) errors.push_back("budget-ttable: must be positive");
  return errors;
}

std::string config_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  j["n"] = c.n;
  j["k"] = c.k;
  j["s"] = c.s;
  j["t"] = c.t;
  j["cd"] = c.cd;
  j["cs"] = c.cs;
  j["p"] = c.p;
  j["trials"] = c.trials;
  j["instances"] = c.instances;
  j["max_clauses"] = c.max_clauses;
  j["seed"] = c.seed;
  j["budget_nodes"] = c.budget_nodes;
  j["budget_ttable"] = c.budget_ttable;
  j["out"] = c.out;
  j["circuit_file"] = c.circuit_file;
  j["nk_explicit"] = c.nk_explicit;
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig c;
  c.command = j.value("command", c.command);
  c.n = j.value("n", c.n);
  c.k = j.value("k", c.k);
  c.s = j.value("s", c.s);
  c.t = j.value("t", c.t);
  c.cd = j.value("cd", c.cd);
  c.cs = j.value("cs", c.cs);
  c.p = j.value("p", c.p);
  c.trials = j.value("trials", c.trials);
  c.instances = j.value("instances", c.instances);
  c.max_clauses = j.value("max_clauses", c.max_clauses);
  c.seed = j.value("seed", c.seed);
  c.budget_nodes = j.value("budget_nodes", c.budget_nodes);
  c.budget_ttable = j.value("budget_ttable", c.budget_ttable);
  c.out = j.value("out", c.out);
  c.circuit_file = j.value("circuit_file", c.circuit_file);
  c.nk_explicit = j.value("nk_explicit", c.nk_explicit);
  return c;
}

namespace {

void apply_command_defaults(ExperimentConfig& c) {
  if (c.command == "verify-lemma3") {
    c.n = 8;
    c.k = 3;
    c.s = 3;
    c.t = 6;
    c.instances = 500;
  } else if (c.command == "verify-lemma4") {
    c.n = 10;
    c.t = 4;  // grid maxima
    c.s = 5;
    c.trials = 10000;
  } else if (c.command == "verify-claim7") {
    c.n = 5;
    c.k = 3;
    c.instances = 100;
  } else if (c.command == "verify-z-oracle") {
    c.n = 5;
    c.k = 3;
    c.instances = 300;
  } else if (c.command == "enumerate-maximal") {
    c.n = 5;
    c.k = 3;
  } else if (c.command == "verify-clique-cnf") {
    c.n = 6;
    c.k = 4;
  } else if (c.command == "verify-distributions") {
    c.n = 12;
    c.k = 4;
    c.trials = 100000;
  } else if (c.command == "run-pipeline") {
    c.n = 6;
    c.k = 3;
    c.t = 6;
    c.s = 2;
    c.trials = 1000;
  } else if (c.command == "theorem1-experiment") {
    c.n = 5;
    c.k = 3;
    c.p = 0.8;
    c.trials = 0;  // exhaustive at the default desk size
  }
}

}  // namespace

ParsedArgs parse_config(const std::vector<std::string>& args) {
  ParsedArgs out;
  CLI::App app{"cliquelab: monotone switching laboratory over graph-edge circuits"};
  app.require_subcommand(0, 1);

  std::string config_path;
  struct Flags {
    int n = 0, k = 0, s = 0, t = 0, cd = 0, cs = 0, instances = 0, max_clauses = 0;
    double p = 0;
    std::uint64_t trials = 0, seed = 0, budget_nodes = 0, budget_ttable = 0;
    std::string out_dir, circuit;
  } fl;

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& name : known_commands()) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->add_option("--config", config_path, "JSON config file; explicit flags override");
    sub->add_option("--n", fl.n, "vertex count");
    sub->add_option("--k", fl.k, "clique size");
    sub->add_option("--s", fl.s, "CNF width");
    sub->add_option("--t", fl.t, "DNF width");
    sub->add_option("--cd", fl.cd, "depth budget");
    sub->add_option("--cs", fl.cs, "size exponent");
    sub->add_option("--p", fl.p, "star rate / probability");
    sub->add_option("--trials", fl.trials, "Monte Carlo trials (0 = exhaustive where supported)");
    sub->add_option("--instances", fl.instances, "random instances");
    sub->add_option("--max-clauses", fl.max_clauses, "clause cap for generated CNFs");
    sub->add_option("--seed", fl.seed, "RNG seed");
    sub->add_option("--budget-nodes", fl.budget_nodes, "tree node budget");
    sub->add_option("--budget-ttable", fl.budget_ttable, "truth table budget");
    sub->add_option("--out", fl.out_dir, "output directory for report and artifacts");
    sub->add_option("--circuit", fl.circuit, "circuit file input");
    subs.emplace_back(name, sub);
  }

  std::vector<const char*> argv;
  argv.push_back("cliquelab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out.show_help = true;
    out.help_text = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.errors.push_back(e.what());
    return out;
  }

  CLI::App* active = nullptr;
  for (auto& [name, sub] : subs)
    if (sub->parsed()) {
      out.config.command = name;
      active = sub;
    }
  if (!active) {
    out.show_help = true;
    out.help_text = app.help();
    return out;
  }

  if (active->count("--config")) {
    try {
      out.config = config_from_json(slurp_file(config_path));
    } catch (const std::exception& e) {
      out.errors.push_back(std::string("config file: ") + e.what());
      return out;
    }
    // subcommand on the command line wins over the file
    for (auto& [name, sub] : subs)
      if (sub->parsed()) out.config.command = name;
  } else {
    apply_command_defaults(out.config);
  }

  if (active->count("--n")) out.config.n = fl.n;
  if (active->count("--k")) out.config.k = fl.k;
  if (active->count("--n") || active->count("--k")) out.config.nk_explicit = true;
  if (active->count("--s")) out.config.s = fl.s;
  if (active->count("--t")) out.config.t = fl.t;
  if (active->count("--cd")) out.config.cd = fl.cd;
  if (active->count("--cs")) out.config.cs = fl.cs;
  if (active->count("--p")) out.config.p = fl.p;
  if (active->count("--trials")) out.config.trials = fl.trials;
  if (active->count("--instances")) out.config.instances = fl.instances;
  if (active->count("--max-clauses")) out.config.max_clauses = fl.max_clauses;
  if (active->count("--seed")) out.config.seed = fl.seed;
  if (active->count("--budget-nodes")) out.config.budget_nodes = fl.budget_nodes;
  if (active->count("--budget-ttable")) out.config.budget_ttable = fl.budget_ttable;
  if (active->count("--out")) out.config.out = fl.out_dir;
  if (active->count("--circuit")) out.config.circuit_file = fl.circuit;

  out.errors = validate_config(out.config);
  return out;
}

}  // namespace cliquelab
