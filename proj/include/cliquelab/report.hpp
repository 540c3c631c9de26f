#pragma once

#include <map>
#include <string>
#include <vector>

#include "cliquelab/config.hpp"

namespace cliquelab {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skipped"
  std::string observed;
  std::string expected;
  std::string details;
};

CheckResult check_pass(std::string name, std::string observed = "", std::string expected = "");
CheckResult check_fail(std::string name, std::string observed, std::string expected,
                       std::string details = "");
CheckResult check_skipped(std::string name, std::string reason);

struct RunReport {
  ExperimentConfig config;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> values;     // command-specific scalars
  std::vector<std::pair<std::string, std::string>> artifacts;  // name -> relative path

  bool all_pass() const;
  bool any_skipped() const;
};

// Deterministic bytes: no timestamps or durations; identical (config, seed)
// reproduce identical files.
std::string report_json(const RunReport& report);
std::string report_csv(const RunReport& report);

// 0 all pass, 1 any failure, 3 any skipped (budget exhaustion)
int report_exit_status(const RunReport& report);

// writes report.json and summary.csv under out_dir (created if missing)
void emit_report_files(const RunReport& report, const std::string& out_dir);

// fixed-format float used everywhere in reports and CSV artifacts
std::string format_double(double value);

}  // namespace cliquelab
