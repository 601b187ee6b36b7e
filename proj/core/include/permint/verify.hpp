#pragma once

#include <string>
#include <vector>

namespace permint {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the library's cross-module invariant suite. level is "quick"
// (n <= 5 scale, seconds) or "full" (n <= 6 plus the n = 4 subset scans).
std::vector<CheckResult> run_invariant_suite(const std::string& level);

}  // namespace permint
