#pragma once

#include <string>
#include <vector>

namespace ncqm {

/// One verification result: residual against its pass tolerance.
/// Exact-arithmetic checks use tolerance 0 and an exactly-representable residual.
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline Check make_check(std::string name, double residual, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual <= tolerance;
  return c;
}

}  // namespace ncqm
