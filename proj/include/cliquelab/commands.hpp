#pragma once

#include <iosfwd>

#include "cliquelab/config.hpp"
#include "cliquelab/report.hpp"

namespace cliquelab {

// One function per subcommand; each returns a fully deterministic report and
// writes its artifacts under config.out when that is set.
RunReport cmd_verify_lemma3(const ExperimentConfig& config);
RunReport cmd_verify_lemma4(const ExperimentConfig& config);
RunReport cmd_verify_claim7(const ExperimentConfig& config);
RunReport cmd_verify_z_oracle(const ExperimentConfig& config);
RunReport cmd_enumerate_maximal(const ExperimentConfig& config);
RunReport cmd_verify_clique_cnf(const ExperimentConfig& config);
RunReport cmd_verify_distributions(const ExperimentConfig& config);
RunReport cmd_run_pipeline(const ExperimentConfig& config);
RunReport cmd_theorem1(const ExperimentConfig& config);

RunReport run_command(const ExperimentConfig& config);

// Full CLI behavior: runs the command, prints one line per check to `out`,
// timing to `err`, writes report files. Returns the process exit status
// (0 pass, 1 failure, 3 budget exhaustion).
int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cliquelab
