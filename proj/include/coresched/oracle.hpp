#pragma once

#include "coresched/model.hpp"

namespace coresched {

struct OracleLimits {
  long long max_states = 2'000'000;
  // Fixing the first flow/coflow to core 0 is sound only under uniform speeds
  // (core labels are interchangeable); verified against unpruned runs.
  bool symmetry_pruning = true;
};

struct OracleResult {
  Rat optimum;
  Assignment witness;
  long long explored = 0;  // complete assignments evaluated
};

// Exhaustive optimum over all flow -> core maps. Per-core cost is the max
// port load divided by the core speed (achievable by construction, see
// realize_core). Refuses instances whose state count exceeds the limit.
OracleResult brute_force_flow(const Instance& instance, const OracleLimits& limits = {});

// Same over coflow -> core maps.
OracleResult brute_force_coflow(const Instance& instance, const OracleLimits& limits = {});

}  // namespace coresched
