#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ptower/common.hpp"

namespace ptower {

struct RunConfig {
  i64 N = 11;
  i64 p = 5;
  int s = 2;
  int r_max = 2;
  std::vector<i64> weight_sweep = {2, 4, 6};  // admissible GL2 line (k values)
  std::string cache_dir;
  std::string output_path;
  int jobs = 1;
  bool dump = false;

  void validate() const;
};

struct CheckResult {
  std::string name;
  std::string suite;
  std::string status = "SKIP";  // PASS | FAIL | SKIP | ERROR
  std::string detail;
  std::map<std::string, std::string> data;
  double ms = 0.0;
};

struct Report {
  static constexpr int kFormatVersion = 1;
  RunConfig config;
  std::vector<CheckResult> checks;

  int fails() const;
  std::string json(bool with_timings = true) const;
  void write_atomic(const std::string& path) const;
};

// a named check within a suite
struct CheckSpec {
  std::string name;
  std::string suite;
  std::function<CheckResult(const RunConfig&)> run;
};

// the registry of all verification checks, keyed by suite name:
// lattice, ordinary, hecke, branching, control, twist, euler
const std::vector<CheckSpec>& check_registry();
std::vector<std::string> suite_names();

// run the named suite ("all" for everything); fan-out over config.jobs
Report run_suite(const std::string& suite, const RunConfig& config);

}  // namespace ptower
