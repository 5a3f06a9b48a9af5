#pragma once

#include <string>
#include <vector>

namespace aw::selfcheck {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<std::string> module_names();

// Property suite of one module; throws aw::ConfigError for unknown names.
std::vector<CheckResult> run_module(const std::string& module);

std::vector<CheckResult> run_all();

}  // namespace aw::selfcheck
