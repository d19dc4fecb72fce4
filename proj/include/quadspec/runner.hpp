#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadspec/quadruple.hpp"

namespace quadspec {

struct RunConfig {
  std::string command;      // validate | evolve | reconstruct | example | search
  std::string config_text;  // JSON document
  std::string out_dir = ".";
  std::map<std::string, double> tol_overrides;
  std::optional<long long> seed_override;
  std::string format = "json";  // json | csv
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 check failures, 2 malformed config, 3 numerical failure
  std::vector<std::string> files;
  std::string message;
  int checks_total = 0;
  int checks_failed = 0;
};

// Executes one command; never throws. Report files land in out_dir as
// <command>_<run id>.<format> plus manifest_<run id>.json.
RunResult run(const RunConfig& cfg);

// Exposed for embedding and tests: build + validate without touching disk.
std::vector<CheckReport> run_validation_checks(const std::string& config_text,
                                               const std::map<std::string, double>& tol_overrides,
                                               std::optional<long long> seed_override);

}  // namespace quadspec
