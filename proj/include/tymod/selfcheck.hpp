#pragma once

#include <string>
#include <vector>

#include "tymod/classify.hpp"

namespace tymod {

struct SelfCheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Runs the internal oracle suites (phase arithmetic, Smith normal form,
/// subgroup closure, form round-trips, the coboundary solver, the sigma
/// involution, classify determinism). Randomized parts use the given seed.
std::vector<SelfCheckResult> run_selfcheck(Int seed);

}  // namespace tymod
