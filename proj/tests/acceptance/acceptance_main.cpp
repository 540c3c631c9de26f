// Acceptance suite: runs each verification suite at its contract parameters
// and prints one PASS/FAIL line per criterion. Exit status 0 only when all
// criteria hold.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "cliquelab/commands.hpp"
#include "cliquelab/config.hpp"
#include "cliquelab/io.hpp"
#include "cliquelab/report.hpp"

using namespace cliquelab;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void conclude(int index, const std::string& name, bool pass, const std::string& detail,
              double elapsed_s, double limit_s) {
  const bool in_time = elapsed_s <= limit_s;
  const bool ok = pass && in_time;
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
  if (!detail.empty()) std::cout << " — " << detail;
  std::ostringstream t;
  t.precision(1);
  t << std::fixed << elapsed_s;
  std::cout << " [" << t.str() << "s";
  if (!in_time) std::cout << ", over the " << limit_s << "s limit";
  std::cout << "]\n";
}

std::string first_failure(const RunReport& rep) {
  for (const auto& c : rep.checks)
    if (c.status != "pass")
      return c.name + ": " + (c.details.empty() ? c.observed : c.details);
  return "";
}

ExperimentConfig command_config(const std::string& command, std::uint64_t seed) {
  ParsedArgs parsed = parse_config({command, "--seed", std::to_string(seed)});
  if (!parsed.errors.empty()) throw std::runtime_error("bad acceptance config for " + command);
  return parsed.config;
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240817;

  {  // 1. CNF→DNF switching: soundness and clique-loss bound, 500 instances
    Timer timer;
    ExperimentConfig c = command_config("verify-lemma3", seed);
    c.instances = 500;
    RunReport rep = cmd_verify_lemma3(c);
    conclude(1, "switch soundness and loss bound (500 CNFs)", rep.all_pass(), first_failure(rep),
             timer.seconds(), 300);
  }

  {  // 2. the five tree relations, figure formula + 100 random instances
    Timer timer;
    ExperimentConfig c = command_config("verify-claim7", seed);
    c.instances = 100;
    RunReport rep = cmd_verify_claim7(c);
    conclude(2, "tree level-set relations", rep.all_pass(), first_failure(rep), timer.seconds(),
             120);
  }

  {  // 3. DNF→CNF switching probability across the (t,s) grid
    Timer timer;
    ExperimentConfig c = command_config("verify-lemma4", seed);
    c.t = 4;
    c.s = 5;
    c.trials = 10000;
    RunReport rep = cmd_verify_lemma4(c);
    conclude(3, "unswitch failure rate and equivalence (4x5 grid, 1e4 draws)", rep.all_pass(),
             first_failure(rep), timer.seconds(), 600);
  }

  {  // 4. fast Z characterization against the definitional oracle
    Timer timer;
    ExperimentConfig c = command_config("verify-z-oracle", seed);
    c.instances = 300;
    RunReport rep = cmd_verify_z_oracle(c);
    conclude(4, "clique implication oracle equivalence (300 instances)", rep.all_pass(),
             first_failure(rep), timer.seconds(), 300);
  }

  {  // 5. depth-2 CLIQUE: equivalence grid, independent recount, lifts
    Timer timer;
    ExperimentConfig c = command_config("verify-clique-cnf", seed);
    c.nk_explicit = false;  // full (4,3)(5,3)(6,3)(6,4) grid
    RunReport rep = cmd_verify_clique_cnf(c);
    conclude(5, "depth-2 representation of CLIQUE", rep.all_pass(), first_failure(rep),
             timer.seconds(), 300);
  }

  {  // 6. pipeline integrity on the toy suite + abort frequency
    Timer timer;
    ExperimentConfig c = command_config("run-pipeline", seed);
    c.trials = 1000;
    RunReport rep = cmd_run_pipeline(c);
    conclude(6, "pipeline soundness, ledger, selection, abort rate", rep.all_pass(),
             first_failure(rep), timer.seconds(), 600);
  }

  {  // 7. distributional checks: composition rate, ER density, clique bound
    Timer timer;
    ExperimentConfig c = command_config("verify-distributions", seed);
    c.trials = 100000;
    RunReport rep = cmd_verify_distributions(c);
    conclude(7, "restriction and ER distribution checks", rep.all_pass(), first_failure(rep),
             timer.seconds(), 300);
  }

  {  // 8. determinism: identical seeds yield byte-identical reports
    Timer timer;
    bool ok = true;
    std::string detail;
    const auto tmp = std::filesystem::temp_directory_path() / "cliquelab_acceptance";
    for (const std::string command :
         {std::string("verify-lemma3"), std::string("run-pipeline"), std::string("verify-lemma4")}) {
      ExperimentConfig c = command_config(command, seed + 1);
      c.instances = 25;
      c.trials = command == "verify-lemma4" ? 300 : 50;
      if (command == "verify-lemma4") {
        c.t = 2;
        c.s = 2;
      }
      std::string bytes[2];
      for (int round = 0; round < 2; ++round) {
        const std::string dir = (tmp / command).string();
        std::filesystem::remove_all(dir);
        ExperimentConfig cr = c;
        cr.out = dir;
        std::ostringstream sink, err;
        execute(cr, sink, err);
        // compare every emitted file, in name order
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
          files.push_back(entry.path().filename().string());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) bytes[round] += f + "\n" + slurp_file(dir + "/" + f);
        std::filesystem::remove_all(dir);
      }
      if (bytes[0] != bytes[1]) {
        ok = false;
        detail = command + " reports differ between runs";
      }
    }
    conclude(8, "seeded reruns are byte-identical", ok, detail, timer.seconds(), 300);
  }

  if (failures == 0) {
    std::cout << "acceptance: all 8 criteria hold\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria failed\n";
  return 1;
}
