#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tangentrep::verify {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;  // measured quantity, or the exception message
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool ok() const;
};

struct CheckInfo {
  std::string module;
  std::string name;
};

/// Every registered invariant check, in execution order.
std::vector<CheckInfo> registry();

/// Runs the checks whose module equals `module_filter` (all when empty).
/// Exceptions inside a check mark it failed rather than propagating.
Report run(std::string_view module_filter = {});

}  // namespace tangentrep::verify
