#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "netsettle/core.hpp"
#include "netsettle/enumerate.hpp"

namespace netsettle {

using Rational = boost::multiprecision::cpp_rational;

// Committed arc set with the per-node net inflow it induces. Committing an
// arc twice is a no-op.
class BudgetState {
 public:
  explicit BudgetState(const RMultigraph& g);

  const RMultigraph& graph() const { return *g_; }
  bool contains(ArcIndex e) const { return committed_mask_[e] != 0; }
  // Net inflow used against the cap margin, and its mirror against the floor.
  Money spent_cap(NodeIndex u) const { return net_[u]; }
  Money spent_floor(NodeIndex u) const { return -net_[u]; }
  const std::vector<ArcIndex>& committed() const { return committed_; }
  Money total() const { return total_; }

  Money marginal(std::span<const ArcIndex> arcs) const;
  // Whether committed plus `arcs` keeps every node they touch in its margins.
  bool admits(std::span<const ArcIndex> arcs) const;
  void commit(std::span<const ArcIndex> arcs);

 private:
  const RMultigraph* g_;
  std::vector<char> committed_mask_;
  std::vector<Money> net_;
  std::vector<ArcIndex> committed_;
  Money total_ = 0;
};

// Arc sets layered over a BudgetState without touching it. Reusable via
// reset(); all bookkeeping is stamp based so a reset costs O(1).
class TrialUnion {
 public:
  explicit TrialUnion(const BudgetState& base);

  void reset();
  // Adds the arcs if the layered union stays within margins.
  bool try_add(std::span<const ArcIndex> arcs);
  bool fits(std::span<const ArcIndex> arcs);
  // Amount of the layered arcs not already committed in the base.
  Money marginal() const { return marginal_; }
  const std::vector<ArcIndex>& arcs() const { return arcs_; }

 private:
  bool probe(std::span<const ArcIndex> arcs);

  const BudgetState& base_;
  unsigned stamp_ = 1;
  unsigned probe_stamp_ = 1;
  std::vector<unsigned> arc_mark_, node_mark_;
  std::vector<Money> node_delta_;
  std::vector<unsigned> probe_arc_, probe_node_;
  std::vector<Money> probe_delta_;
  std::vector<NodeIndex> probe_nodes_;
  std::vector<ArcIndex> probe_arcs_;
  std::vector<ArcIndex> arcs_;
  Money marginal_ = 0;
};

// Number of cycles using each arc.
std::vector<int> arc_frequencies(const RMultigraph& g, std::span<const Cycle> cycles);

// Total amount over frequency-weighted amount. freq is indexed by arc.
Rational cycle_score(const RMultigraph& g, const Cycle& c, std::span<const int> freq);

// Greedy weighted max cover of at most k cycles; returns indices into
// `cycles`. Ties: score, then amount, then index.
std::vector<int> beam_select(const RMultigraph& g, std::span<const Cycle> cycles, int k);

// Unordered pairs (i < j) of indices into `selected` whose union, on top of
// the committed arcs, stays within margins. Pairs of cycles that share no
// node are only tested when both are admissible on their own.
std::vector<std::pair<int, int>> admissible_pairs(std::span<const Cycle> selected,
                                                  const BudgetState& committed);

struct BeamOptions {
  int k = 1000;
  int max_len = 15;
  std::size_t cycle_budget = kDefaultCycleBudget;
};

// Beam search over one graph, without preprocessing or splitting.
struct BeamRun {
  std::vector<Cycle> selected;  // cycles of every committed augmentation
  std::vector<ArcIndex> arcs;   // ascending
  bool truncated = false;
};
BeamRun beam_component(const RMultigraph& g, const BeamOptions& options);

// Preprocesses, solves each weakly connected component and returns the union.
Settlement settle_beam(const RMultigraph& g, const BeamOptions& options = {});

}  // namespace netsettle
