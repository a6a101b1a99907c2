#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netsettle/core.hpp"

namespace netsettle {

struct FlowArc {
  int tail = 0;
  int head = 0;
  std::int64_t cost = 0;
  Money lower = 0;
  Cap upper = kInfinite;
};

// Callers must not create a negative-cost cycle made only of unbounded arcs.
struct FlowNetwork {
  int num_nodes = 0;
  std::vector<FlowArc> arcs;
  std::vector<Money> supplies;  // net outflow required at each node

  // R-flow layout: graph nodes first, then the two dummies.
  int source = -1;
  int sink = -1;
  // Receivables collapsed into each flow arc; empty for dummy arcs.
  std::vector<std::vector<ArcIndex>> bundles;

  int add_node();
  int add_arc(int tail, int head, std::int64_t cost, Money lower, Cap upper);
};

enum class FlowStatus { kOptimal, kInfeasible };

struct FlowResult {
  FlowStatus status = FlowStatus::kInfeasible;
  std::vector<Money> flow;  // per network arc
  std::int64_t cost = 0;
};

struct RFlowOptions {
  // Clamp dummy capacities at zero instead of rejecting accounts that sit
  // outside their own bounds (as happens with raised floors).
  bool clamp_margins = false;
};

FlowNetwork build_rflow_graph(const RMultigraph& g, std::span<const ArcIndex> removed,
                              std::span<const ArcIndex> forced, RFlowOptions options = {});

// Exact min-cost flow with lower bounds by cost scaling. Arcs of infinite
// capacity must not close a negative-cost cycle (the problem would be
// unbounded); that case throws ContractViolation.
FlowResult min_cost_flow(const FlowNetwork& net);

// Value of the relaxed problem, or nullopt when the forced arcs admit no
// circulation (the subtree can be pruned).
std::optional<Money> settlement_upper_bound(const RMultigraph& g,
                                            std::span<const ArcIndex> removed,
                                            std::span<const ArcIndex> forced);

}  // namespace netsettle
