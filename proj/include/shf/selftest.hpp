#pragma once

#include <string>
#include <vector>

namespace shf {

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick analytic and property checks runnable from an installed binary.
std::vector<SelftestCase> run_selftest();

}  // namespace shf
