#pragma once

#include <string>
#include <vector>

namespace korteweg::app {

struct VerifyCase {
  std::string name;
  double value = 0;
  double threshold = 0;
  std::string relation;  // "<", "<=", ">=", "=="
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  bool pass() const;
};

const std::vector<std::string>& suite_names();

/// Runs a property suite at fixed seeds and resolutions. Throws ConfigError
/// for an unknown suite.
SuiteReport run_suite(const std::string& suite);

}  // namespace korteweg::app
