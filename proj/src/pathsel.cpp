#include "netsettle/pathsel.hpp"

#include <algorithm>
#include <numeric>

#include "beam_core.hpp"
#include "netsettle/enumerate.hpp"
#include "netsettle/preprocess.hpp"

namespace netsettle {

namespace {

std::vector<NodeIndex> nodes_of(const RMultigraph& g, const Cycle& c) {
  std::vector<NodeIndex> nodes;
  for (ArcIndex e : c.arcs) nodes.push_back(g.arc(e).tail);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

// Nodes reachable from `from` in at most `hops` arcs.
std::vector<char> reachable(const RMultigraph& g, const std::vector<NodeIndex>& from, int hops) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeIndex> frontier = from;
  for (NodeIndex u : from) seen[u] = 1;
  for (int d = 0; d < hops && !frontier.empty(); ++d) {
    std::vector<NodeIndex> next;
    for (NodeIndex u : frontier) {
      for (ArcIndex e : g.out_arcs(u)) {
        NodeIndex v = g.arc(e).head;
        if (!seen[v]) {
          seen[v] = 1;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return seen;
}

}  // namespace

std::vector<ArcIndex> augment_with_paths(const RMultigraph& g, const BeamRun& run,
                                         const PathOptions& options, bool& truncated) {
  BudgetState state(g);
  state.commit(run.arcs);
  const std::size_t before = state.committed().size();
  const int n = static_cast<int>(run.selected.size());

  // Arcs already committed add nothing, and any fresh stretch of a path that
  // uses them is itself a path between selected cycles, so only the
  // uncommitted arcs are searched.
  std::vector<ArcIndex> rest;
  for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
    if (!state.contains(e)) rest.push_back(e);
  }
  RMultigraph fresh = g.subgraph(rest);

  std::vector<std::vector<NodeIndex>> nodes(n);
  std::vector<std::vector<char>> reach(n);
  for (int i = 0; i < n; ++i) {
    for (NodeIndex u : nodes_of(g, run.selected[i])) {
      if (auto v = fresh.find_node(g.account(u).id)) nodes[i].push_back(*v);
    }
    reach[i] = reachable(fresh, nodes[i], options.max_path_len);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || nodes[i].empty()) continue;
      bool linked = std::any_of(nodes[j].begin(), nodes[j].end(),
                                [&](NodeIndex v) { return reach[i][v] != 0; });
      if (linked) pairs.emplace_back(i, j);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return run.selected[a.first].amount + run.selected[a.second].amount >
           run.selected[b.first].amount + run.selected[b.second].amount;
  });

  for (auto [i, j] : pairs) {
    PathSet ps = enumerate_paths(fresh, nodes[i], nodes[j], options.max_path_len,
                                 options.beam.cycle_budget);
    truncated = truncated || ps.truncated;
    if (ps.paths.empty()) continue;
    for (Path& p : ps.paths) {
      for (ArcIndex& e : p.arcs) e = fresh.parent_arc(e);
    }
    if (options.variant == PathVariant::kGreedy) {
      std::vector<int> order(ps.paths.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ps.paths[a].amount > ps.paths[b].amount;
      });
      for (int p : order) {
        if (state.admits(ps.paths[p].arcs)) state.commit(ps.paths[p].arcs);
      }
    } else {
      detail::BeamEngine<Path> engine(g, std::span<const Path>(ps.paths));
      engine.run(options.k_p, state);
    }
  }
  std::vector<ArcIndex> added(state.committed().begin() + before, state.committed().end());
  std::sort(added.begin(), added.end());
  return added;
}

Settlement settle_path(const RMultigraph& g, const PathOptions& options) {
  std::vector<ArcIndex> kept = preprocess(g);
  ComponentSplit split = split_components(g, kept);
  std::vector<ArcIndex> arcs;
  SolveFlags flags;
  for (const auto& comp : split.components) {
    RMultigraph sub = g.subgraph(comp);
    BeamRun run = beam_component(sub, options.beam);
    bool truncated = false;
    std::vector<ArcIndex> added = augment_with_paths(sub, run, options, truncated);
    for (ArcIndex e : run.arcs) arcs.push_back(sub.parent_arc(e));
    for (ArcIndex e : added) arcs.push_back(sub.parent_arc(e));
    flags.cycles_truncated = flags.cycles_truncated || run.truncated;
    flags.paths_truncated = flags.paths_truncated || truncated;
  }
  Settlement s = make_settlement(g, std::move(arcs));
  s.flags = flags;
  return s;
}

}  // namespace netsettle
