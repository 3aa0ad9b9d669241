#pragma once

#include <string>
#include <vector>

namespace hardy::suites {

// One verified property: pass iff measured <= tolerance. input names the
// worst offending case when the check aggregates many.
struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string input;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool pass = true;
  std::string to_json() const;
};

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name);

}  // namespace hardy::suites
