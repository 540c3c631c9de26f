#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cliquelab {

// One flat config covers every subcommand; each command reads its slice.
// Defaults are per command and applied at parse time.
struct ExperimentConfig {
  std::string command;

  int n = 5;
  int k = 3;
  int s = 2;
  int t = 6;
  int cd = 2;
  int cs = 1;
  double p = 0.5;            // star rate / probability, command-specific
  std::uint64_t trials = 1000;
  int instances = 100;       // random instances for verification suites
  int max_clauses = 6;
  std::uint64_t seed = 1;
  std::uint64_t budget_nodes = std::uint64_t{1} << 20;
  std::uint64_t budget_ttable = std::uint64_t{1} << 22;
  std::string out;           // output directory; empty writes no files
  std::string circuit_file;  // optional circuit input for pipeline/experiment
  bool nk_explicit = false;  // --n/--k were given (grid commands collapse to one pair)

  bool operator==(const ExperimentConfig&) const = default;
};

const std::vector<std::string>& known_commands();

// Empty result means valid; otherwise one message per offending field.
std::vector<std::string> validate_config(const ExperimentConfig& config);

std::string config_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

struct ParsedArgs {
  ExperimentConfig config;
  bool show_help = false;
  std::string help_text;
  std::vector<std::string> errors;  // usage errors; nonempty means exit 2
};

// argv-style parsing: first positional token is the subcommand, --config
// loads a JSON file first and explicit flags override it.
ParsedArgs parse_config(const std::vector<std::string>& args);

}  // namespace cliquelab
