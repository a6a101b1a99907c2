#include "netsettle/hybrid.hpp"

#include "netsettle/preprocess.hpp"

namespace netsettle {

namespace {

Settlement heuristic(const RMultigraph& sub, const HybridOptions& options) {
  BeamRun run = beam_component(sub, options.heuristic.beam);
  std::vector<ArcIndex> arcs = run.arcs;
  bool truncated = false;
  if (options.use_paths) {
    std::vector<ArcIndex> added = augment_with_paths(sub, run, options.heuristic, truncated);
    arcs.insert(arcs.end(), added.begin(), added.end());
  }
  Settlement s = make_settlement(sub, std::move(arcs));
  s.flags.cycles_truncated = run.truncated;
  s.flags.paths_truncated = truncated;
  return s;
}

}  // namespace

Settlement settle_h(const RMultigraph& g, const HybridOptions& options) {
  std::vector<ArcIndex> kept = preprocess(g);
  ComponentSplit split = split_components(g, kept);
  std::vector<ArcIndex> arcs;
  SolveFlags flags;
  for (const auto& comp : split.components) {
    RMultigraph sub = g.subgraph(comp);
    Settlement local;
    if (static_cast<int>(comp.size()) <= options.h) {
      ExactOptions exact;
      exact.max_len = options.heuristic.beam.max_len;
      exact.cycle_budget = options.heuristic.beam.cycle_budget;
      exact.node_budget = options.node_budget;
      try {
        local = settle_bb(sub, exact);
      } catch (const BudgetExceeded&) {
        local = heuristic(sub, options);
        ++local.flags.exact_fallbacks;
      }
    } else {
      local = heuristic(sub, options);
    }
    for (ArcIndex e : local.arcs) arcs.push_back(sub.parent_arc(e));
    flags.merge(local.flags);
  }
  Settlement s = make_settlement(g, std::move(arcs));
  s.flags = flags;
  return s;
}

}  // namespace netsettle
