#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netsettle/core.hpp"

namespace netsettle {

inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

// Node-simple closed walk. arcs[0] leaves the smallest node on the cycle.
struct Cycle {
  std::vector<ArcIndex> arcs;
  Money amount = 0;
};

// Node-simple open walk with distinct endpoints.
struct Path {
  std::vector<ArcIndex> arcs;
  Money amount = 0;
};

struct CycleSet {
  std::vector<Cycle> cycles;
  bool truncated = false;
};

struct PathSet {
  std::vector<Path> paths;
  bool truncated = false;
};

// All node-simple cycles with at most max_len arcs, parallel arcs giving
// distinct cycles. Ordered by starting node, then lexicographically by arc
// index sequence. Stops after `budget` cycles and sets `truncated`.
CycleSet enumerate_cycles(const RMultigraph& g, int max_len,
                          std::size_t budget = kDefaultCycleBudget);

// Node-simple paths with at most max_len arcs that start at a source and
// stop at the first target reached, which must differ from the start.
// Interior nodes are never targets. Ordered by source, then by arc sequence.
PathSet enumerate_paths(const RMultigraph& g, std::span<const NodeIndex> sources,
                        std::span<const NodeIndex> targets, int max_len,
                        std::size_t budget = kDefaultCycleBudget);

}  // namespace netsettle
