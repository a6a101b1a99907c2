#include "netsettle/enumerate.hpp"

#include <limits>

namespace netsettle {

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 2;

struct CycleSearch {
  CycleSearch(const RMultigraph& graph, int len, std::size_t cap)
      : g(graph), max_len(len), budget(cap) {}

  const RMultigraph& g;
  int max_len;
  std::size_t budget;
  NodeIndex start = 0;
  std::vector<int> dist;  // arcs needed to get back to `start`
  std::vector<char> on_stack;
  std::vector<ArcIndex> stack;
  CycleSet out;

  bool full() {
    if (out.cycles.size() < budget) return false;
    out.truncated = true;
    return true;
  }

  // Reverse BFS over nodes >= start, bounded by max_len - 1 hops.
  void distances(std::vector<NodeIndex>& touched) {
    std::vector<NodeIndex> frontier{start};
    dist[start] = 0;
    touched.push_back(start);
    for (int d = 1; d < max_len && !frontier.empty(); ++d) {
      std::vector<NodeIndex> next;
      for (NodeIndex v : frontier) {
        for (ArcIndex e : g.in_arcs(v)) {
          NodeIndex u = g.arc(e).tail;
          if (u <= start || dist[u] != kFar) continue;
          dist[u] = d;
          touched.push_back(u);
          next.push_back(u);
        }
      }
      frontier.swap(next);
    }
  }

  void extend(NodeIndex v, Money amount) {
    const int depth = static_cast<int>(stack.size());
    for (ArcIndex e : g.out_arcs(v)) {
      if (full()) return;
      NodeIndex w = g.arc(e).head;
      if (w < start) continue;
      Money next = amount + g.arc(e).amount;
      if (w == start) {
        Cycle c;
        c.arcs = stack;
        c.arcs.push_back(e);
        c.amount = next;
        out.cycles.push_back(std::move(c));
        continue;
      }
      if (on_stack[w] || depth + 1 + dist[w] > max_len) continue;
      on_stack[w] = 1;
      stack.push_back(e);
      extend(w, next);
      stack.pop_back();
      on_stack[w] = 0;
    }
  }
};

}  // namespace

CycleSet enumerate_cycles(const RMultigraph& g, int max_len, std::size_t budget) {
  if (max_len < 2) throw ContractViolation("enumerate_cycles: max_len must be >= 2");
  CycleSearch search(g, max_len, budget);
  search.dist.assign(g.num_nodes(), kFar);
  search.on_stack.assign(g.num_nodes(), 0);
  std::vector<NodeIndex> touched;
  for (NodeIndex s = 0; s < g.num_nodes() && !search.full(); ++s) {
    search.start = s;
    touched.clear();
    search.distances(touched);
    search.on_stack[s] = 1;
    search.extend(s, 0);
    search.on_stack[s] = 0;
    for (NodeIndex u : touched) search.dist[u] = kFar;
  }
  return std::move(search.out);
}

PathSet enumerate_paths(const RMultigraph& g, std::span<const NodeIndex> sources,
                        std::span<const NodeIndex> targets, int max_len,
                        std::size_t budget) {
  PathSet out;
  if (max_len < 1 || sources.empty() || targets.empty()) return out;
  const int n = g.num_nodes();
  std::vector<char> is_target(n, 0), is_source(n, 0);
  for (NodeIndex t : targets) is_target[t] = 1;
  for (NodeIndex s : sources) is_source[s] = 1;

  // Hops to the nearest target through non-target nodes.
  std::vector<int> dist(n, kFar);
  std::vector<NodeIndex> frontier;
  for (NodeIndex t = 0; t < n; ++t) {
    if (is_target[t]) {
      dist[t] = 0;
      frontier.push_back(t);
    }
  }
  for (int d = 1; d < max_len && !frontier.empty(); ++d) {
    std::vector<NodeIndex> next;
    for (NodeIndex v : frontier) {
      for (ArcIndex e : g.in_arcs(v)) {
        NodeIndex u = g.arc(e).tail;
        if (dist[u] != kFar) continue;
        dist[u] = d;
        next.push_back(u);
      }
    }
    frontier.swap(next);
  }

  std::vector<char> on_stack(n, 0);
  std::vector<ArcIndex> stack;
  auto full = [&] {
    if (out.paths.size() < budget) return false;
    out.truncated = true;
    return true;
  };
  auto extend = [&](auto&& self, NodeIndex v, Money amount) -> void {
    const int depth = static_cast<int>(stack.size());
    for (ArcIndex e : g.out_arcs(v)) {
      if (full()) return;
      NodeIndex w = g.arc(e).head;
      if (on_stack[w]) continue;
      Money next = amount + g.arc(e).amount;
      if (is_target[w]) {
        Path p;
        p.arcs = stack;
        p.arcs.push_back(e);
        p.amount = next;
        out.paths.push_back(std::move(p));
        continue;
      }
      if (depth + 1 + dist[w] > max_len) continue;
      on_stack[w] = 1;
      stack.push_back(e);
      self(self, w, next);
      stack.pop_back();
      on_stack[w] = 0;
    }
  };
  for (NodeIndex s = 0; s < n && !full(); ++s) {
    if (!is_source[s]) continue;
    on_stack[s] = 1;
    extend(extend, s, 0);
    on_stack[s] = 0;
  }
  return out;
}

}  // namespace netsettle
