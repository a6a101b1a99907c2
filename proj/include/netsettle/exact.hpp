#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "netsettle/core.hpp"
#include "netsettle/enumerate.hpp"

namespace netsettle {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Visit { kBfs, kDfs };

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;
inline constexpr int kDefaultMaxLen = 15;

struct ExactOptions {
  Visit visit = Visit::kBfs;
  int max_len = kDefaultMaxLen;
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t cycle_budget = kDefaultCycleBudget;
};

// Greedy cycle-union lower bound. Holds the cycles of one graph so that
// repeated calls with different forced/excluded sets only filter them.
class CoverLowerBound {
 public:
  CoverLowerBound(const RMultigraph& g, std::vector<Cycle> cycles);

  // Feasible union of cycles containing every included arc and no excluded
  // arc, or the empty settlement when the included arcs cannot be covered.
  Settlement solve(std::span<const ArcIndex> included,
                   std::span<const ArcIndex> excluded) const;

 private:
  const RMultigraph& g_;
  std::vector<Cycle> cycles_;
  std::vector<std::vector<int>> cycles_at_node_;
};

// Exact optimum by branch and bound over arcs in non-increasing amount
// order. Throws BudgetExceeded when the tree grows past the node budget.
Settlement settle_bb(const RMultigraph& g, const ExactOptions& options = {});

Settlement settle_bb_lb(const RMultigraph& g, std::span<const ArcIndex> included,
                        std::span<const ArcIndex> excluded, int max_len = kDefaultMaxLen,
                        std::size_t cycle_budget = kDefaultCycleBudget);

inline constexpr int kBruteForceMaxArcs = 20;

// Exhaustive search; refuses graphs with more than kBruteForceMaxArcs arcs.
// Among optima the lexicographically smallest arc index set wins.
Settlement brute_force_optimal(const RMultigraph& g);

}  // namespace netsettle
