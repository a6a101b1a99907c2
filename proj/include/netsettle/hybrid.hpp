#pragma once

#include "netsettle/core.hpp"
#include "netsettle/exact.hpp"
#include "netsettle/pathsel.hpp"

namespace netsettle {

struct HybridOptions {
  int h = 20;  // components with at most h arcs are solved exactly
  bool use_paths = false;
  PathOptions heuristic;  // beam settings live in heuristic.beam
  std::size_t node_budget = kDefaultNodeBudget;
};

// Exact search on small components, beam (or beam plus paths) on the rest.
// A small component whose exact search runs out of budget falls back to
// the heuristic; flags.exact_fallbacks counts these.
Settlement settle_h(const RMultigraph& g, const HybridOptions& options = {});

}  // namespace netsettle
