#include "netsettle/preprocess.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace netsettle {

namespace {

std::vector<ArcIndex> all_arcs(const RMultigraph& g) {
  std::vector<ArcIndex> arcs(g.num_arcs());
  std::iota(arcs.begin(), arcs.end(), 0);
  return arcs;
}

}  // namespace

std::vector<ArcIndex> d_core_11(const RMultigraph& g) { return d_core_11(g, all_arcs(g)); }

std::vector<ArcIndex> d_core_11(const RMultigraph& g, std::span<const ArcIndex> arcs) {
  std::vector<char> alive(g.num_arcs(), 0);
  std::vector<int> indeg(g.num_nodes(), 0), outdeg(g.num_nodes(), 0);
  for (ArcIndex e : arcs) {
    if (alive[e]) continue;
    alive[e] = 1;
    ++outdeg[g.arc(e).tail];
    ++indeg[g.arc(e).head];
  }
  std::vector<char> removed(g.num_nodes(), 0);
  std::vector<NodeIndex> work;
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    if ((indeg[u] == 0) != (outdeg[u] == 0)) work.push_back(u);
  }
  while (!work.empty()) {
    NodeIndex u = work.back();
    work.pop_back();
    if (removed[u]) continue;
    removed[u] = 1;
    for (ArcIndex e : g.out_arcs(u)) {
      if (!alive[e]) continue;
      alive[e] = 0;
      NodeIndex v = g.arc(e).head;
      if (--indeg[v] == 0 && !removed[v]) work.push_back(v);
    }
    for (ArcIndex e : g.in_arcs(u)) {
      if (!alive[e]) continue;
      alive[e] = 0;
      NodeIndex v = g.arc(e).tail;
      if (--outdeg[v] == 0 && !removed[v]) work.push_back(v);
    }
  }
  std::vector<ArcIndex> core;
  for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
    if (alive[e]) core.push_back(e);
  }
  return core;
}

std::vector<NodeIndex> balance_bound_filter(const RMultigraph& g) {
  return balance_bound_filter(g, all_arcs(g));
}

std::vector<NodeIndex> balance_bound_filter(const RMultigraph& g,
                                            std::span<const ArcIndex> arcs) {
  constexpr Money kNone = std::numeric_limits<Money>::max();
  const int n = g.num_nodes();
  std::vector<Money> sum_in(n, 0), sum_out(n, 0), min_in(n, kNone), min_out(n, kNone);
  for (ArcIndex e : arcs) {
    const Arc& a = g.arc(e);
    sum_in[a.head] += a.amount;
    min_in[a.head] = std::min(min_in[a.head], a.amount);
    sum_out[a.tail] += a.amount;
    min_out[a.tail] = std::min(min_out[a.tail], a.amount);
  }
  std::vector<NodeIndex> out;
  for (NodeIndex u = 0; u < n; ++u) {
    if (min_in[u] == kNone || min_out[u] == kNone) continue;
    Money lb = min_in[u] - sum_out[u];
    Money ub = sum_in[u] - min_out[u];
    Cap hi = g.upper_margin(u);
    if (ub < g.lower_margin(u) || (hi && lb > *hi)) out.push_back(u);
  }
  return out;
}

std::vector<ArcIndex> preprocess(const RMultigraph& g) {
  std::vector<ArcIndex> arcs = d_core_11(g);
  while (true) {
    std::vector<NodeIndex> drop = balance_bound_filter(g, arcs);
    if (drop.empty()) return arcs;
    std::vector<char> gone(g.num_nodes(), 0);
    for (NodeIndex u : drop) gone[u] = 1;
    std::erase_if(arcs, [&](ArcIndex e) {
      return gone[g.arc(e).tail] || gone[g.arc(e).head];
    });
    arcs = d_core_11(g, arcs);
  }
}

ComponentSplit split_components(const RMultigraph& g) {
  return split_components(g, all_arcs(g));
}

ComponentSplit split_components(const RMultigraph& g, std::span<const ArcIndex> arcs) {
  std::vector<NodeIndex> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (ArcIndex e : arcs) {
    NodeIndex a = find(g.arc(e).tail), b = find(g.arc(e).head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Roots are the smallest node of each set, so numbering by root index
  // orders components by smallest contained node.
  std::vector<int> slot(g.num_nodes(), -1);
  std::vector<ArcIndex> sorted(arcs.begin(), arcs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<NodeIndex> roots;
  for (ArcIndex e : sorted) roots.push_back(find(g.arc(e).tail));
  std::vector<NodeIndex> order = roots;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  ComponentSplit split;
  split.components.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) slot[order[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    split.components[slot[roots[i]]].push_back(sorted[i]);
  }
  return split;
}

}  // namespace netsettle
