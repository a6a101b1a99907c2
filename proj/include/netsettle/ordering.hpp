#pragma once

#include <functional>
#include <span>
#include <vector>

#include "netsettle/core.hpp"

namespace netsettle {

struct TimedArc {
  ArcIndex arc = 0;
  int ts = 0;
};

// Transfers in execution order. Timestamps never decrease along `arcs`.
struct OrderedSettlement {
  std::vector<TimedArc> arcs;
  SolveFlags flags;
};

Settlement to_settlement(const RMultigraph& g, const OrderedSettlement& ordered);

// min(sum of in-arcs, cap + bl_a - bl_r); the second term is unbounded
// when cap is INFINITE.
Money ub_in(const RMultigraph& g, NodeIndex u);

using RoundSolver = std::function<Settlement(const RMultigraph&)>;

// Repeatedly solves the settlement problem with every floor raised by the
// node's total incoming amount, so that each round can run in any order.
OrderedSettlement redefine_floors(const RMultigraph& g, const RoundSolver& solve);

// Indices of a maximum-sum subset of `amounts` not exceeding `budget`.
// Exact for up to 24 items or totals up to 10^7, greedy largest-first beyond.
std::vector<int> max_subset_within(std::span<const Money> amounts, Money budget);

// Rounds of per-debtor payments funded by the balance at round start, then
// pruning to the (1,1)-D-core with forward cascades along timestamps.
OrderedSettlement select_and_order(const RMultigraph& g);

}  // namespace netsettle
