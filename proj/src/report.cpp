#include "cliquelab/report.hpp"

#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "cliquelab/io.hpp"

namespace cliquelab {

CheckResult check_pass(std::string name, std::string observed, std::string expected) {
  return CheckResult{std::move(name), "pass", std::move(observed), std::move(expected), ""};
}

CheckResult check_fail(std::string name, std::string observed, std::string expected,
                       std::string details) {
  return CheckResult{std::move(name), "fail", std::move(observed), std::move(expected),
                     std::move(details)};
}

CheckResult check_skipped(std::string name, std::string reason) {
  return CheckResult{std::move(name), "skipped", "", "", std::move(reason)};
}

bool RunReport::all_pass() const {
  for (const auto& c : checks)
    if (c.status != "pass") return false;
  return true;
}

bool RunReport::any_skipped() const {
  for (const auto& c : checks)
    if (c.status == "skipped") return true;
  return false;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string report_json(const RunReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["tool"] = {{"name", "cliquelab"}, {"version", kToolVersion}};
  // artifact paths are relative, so the report does not depend on where it
  // was written
  ExperimentConfig echoed = report.config;
  echoed.out.clear();
  j["config"] = nlohmann::json::parse(config_json(echoed));
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["observed"] = c.observed;
    jc["expected"] = c.expected;
    jc["details"] = c.details;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, v] : report.values) values[k] = v;
  j["values"] = values;
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto& [name, path] : report.artifacts)
    artifacts.push_back({{"name", name}, {"path", path}});
  j["artifacts"] = artifacts;
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const RunReport& report) {
  std::string out = "check,status,observed,expected,details\n";
  for (const auto& c : report.checks)
    out += csv_escape(c.name) + "," + csv_escape(c.status) + "," + csv_escape(c.observed) + "," +
           csv_escape(c.expected) + "," + csv_escape(c.details) + "\n";
  return out;
}

int report_exit_status(const RunReport& report) {
  for (const auto& c : report.checks)
    if (c.status == "fail") return 1;
  return report.any_skipped() ? 3 : 0;
}

void emit_report_files(const RunReport& report, const std::string& out_dir) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  spit_file(out_dir + "/report.json", report_json(report));
  spit_file(out_dir + "/summary.csv", report_csv(report));
}

}  // namespace cliquelab
