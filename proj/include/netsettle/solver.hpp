#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsettle/core.hpp"
#include "netsettle/hybrid.hpp"
#include "netsettle/ordering.hpp"

namespace netsettle {

enum class Algorithm {
  kBb,
  kBbLb,
  kBeam,
  kPathGreedy,
  kPathBeam,
  kHybrid,
  kHybridPath,
  kRfb,
  kRedefineFloors,
  kSelectAndOrder,
};

// Accepts the short names used on the command line ("h", "path-g", ...)
// and the long settle-* spellings.
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algo);

struct SolverConfig {
  Algorithm algo = Algorithm::kHybrid;
  int max_len = kDefaultMaxLen;        // L
  int max_path_len = 15;               // L_p
  int h = 20;                          // H
  int k = 1000;                        // K
  int k_p = 1000;                      // K_p
  PathVariant path_variant = PathVariant::kGreedy;  // used by h-path
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t cycle_budget = kDefaultCycleBudget;
};

struct SolveOutcome {
  Settlement settlement;
  std::vector<TimedArc> order;  // filled by the two ordering algorithms
  bool ordered = false;
};

// Throws BudgetExceeded when bb runs out of nodes.
SolveOutcome run_solver(const RMultigraph& g, const SolverConfig& config);

}  // namespace netsettle
