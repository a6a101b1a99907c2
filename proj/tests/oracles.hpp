#pragma once

// Independent reference implementations used only by tests. They are
// deliberately naive: exhaustive search and textbook algorithms, no code
// shared with the library beyond the graph accessors.

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "netsettle/core.hpp"
#include "netsettle/flow.hpp"

namespace oracle {

using netsettle::ArcIndex;
using netsettle::Money;
using netsettle::NodeIndex;
using netsettle::RMultigraph;

// Every simple cycle of length <= max_len, rotated so that the first arc
// leaves the smallest node. Plain DFS from every node.
inline std::set<std::vector<ArcIndex>> cycles(const RMultigraph& g, int max_len) {
  std::set<std::vector<ArcIndex>> out;
  const int n = g.num_nodes();
  std::vector<char> on(n, 0);
  std::vector<ArcIndex> stack;
  std::function<void(NodeIndex, NodeIndex)> dfs = [&](NodeIndex start, NodeIndex u) {
    for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
      if (g.arc(e).tail != u) continue;
      NodeIndex v = g.arc(e).head;
      stack.push_back(e);
      if (v == start) {
        std::vector<ArcIndex> c = stack;
        auto smallest = std::min_element(c.begin(), c.end(), [&](ArcIndex a, ArcIndex b) {
          return g.arc(a).tail < g.arc(b).tail;
        });
        std::rotate(c.begin(), smallest, c.end());
        out.insert(c);
      } else if (!on[v] && static_cast<int>(stack.size()) < max_len) {
        on[v] = 1;
        dfs(start, v);
        on[v] = 0;
      }
      stack.pop_back();
    }
  };
  for (NodeIndex s = 0; s < n; ++s) {
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  return out;
}

// Simple paths from a source that end at the first target met (never the
// start itself) and pass through no target on the way.
inline std::multiset<std::vector<ArcIndex>> paths(const RMultigraph& g,
                                                  const std::vector<NodeIndex>& sources,
                                                  const std::vector<NodeIndex>& targets,
                                                  int max_len) {
  std::multiset<std::vector<ArcIndex>> out;
  std::vector<char> is_target(g.num_nodes(), 0), on(g.num_nodes(), 0);
  for (NodeIndex t : targets) is_target[t] = 1;
  std::vector<ArcIndex> stack;
  std::function<void(NodeIndex)> dfs = [&](NodeIndex u) {
    if (static_cast<int>(stack.size()) == max_len) return;
    for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
      if (g.arc(e).tail != u) continue;
      NodeIndex v = g.arc(e).head;
      if (on[v]) continue;
      stack.push_back(e);
      if (is_target[v]) {
        out.insert(stack);
      } else {
        on[v] = 1;
        dfs(v);
        on[v] = 0;
      }
      stack.pop_back();
    }
  };
  std::set<NodeIndex> unique(sources.begin(), sources.end());
  for (NodeIndex s : unique) {
    on[s] = 1;
    dfs(s);
    on[s] = 0;
  }
  return out;
}

// Both settlement constraints, recomputed from the raw account fields.
inline bool feasible(const RMultigraph& g, const std::vector<ArcIndex>& arcs) {
  const int n = g.num_nodes();
  std::vector<Money> in(n, 0), out(n, 0);
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  std::set<ArcIndex> unique(arcs.begin(), arcs.end());
  for (ArcIndex e : unique) {
    in[g.arc(e).head] += g.arc(e).amount;
    out[g.arc(e).tail] += g.arc(e).amount;
    ++indeg[g.arc(e).head];
    ++outdeg[g.arc(e).tail];
  }
  for (NodeIndex u = 0; u < n; ++u) {
    if (indeg[u] == 0 && outdeg[u] == 0) continue;
    if (indeg[u] == 0 || outdeg[u] == 0) return false;
    const auto& a = g.account(u);
    if (a.bl_a + in[u] - out[u] < a.floor) return false;
    if (a.cap && a.bl_r + in[u] - out[u] > *a.cap) return false;
  }
  return true;
}

// Constraint (1) only, over the nodes touched by `arcs`.
inline bool within_margins(const RMultigraph& g, const std::vector<ArcIndex>& arcs) {
  std::vector<Money> net(g.num_nodes(), 0);
  std::vector<char> touched(g.num_nodes(), 0);
  std::set<ArcIndex> unique(arcs.begin(), arcs.end());
  for (ArcIndex e : unique) {
    net[g.arc(e).head] += g.arc(e).amount;
    net[g.arc(e).tail] -= g.arc(e).amount;
    touched[g.arc(e).head] = touched[g.arc(e).tail] = 1;
  }
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    if (!touched[u]) continue;
    const auto& a = g.account(u);
    if (a.bl_a + net[u] < a.floor) return false;
    if (a.cap && a.bl_r + net[u] > *a.cap) return false;
  }
  return true;
}

// Replays transfers one at a time; false as soon as a debtor dips below
// its floor.
inline bool prefix_safe(const RMultigraph& g, const std::vector<ArcIndex>& order) {
  std::vector<Money> bl(g.num_nodes());
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) bl[u] = g.account(u).bl_a;
  for (ArcIndex e : order) {
    bl[g.arc(e).tail] -= g.arc(e).amount;
    bl[g.arc(e).head] += g.arc(e).amount;
    if (bl[g.arc(e).tail] < g.account(g.arc(e).tail).floor) return false;
  }
  return true;
}

struct Certificate {
  bool bounds = true;
  bool conservation = true;
  bool no_negative_cycle = true;
  bool cost_matches = true;
  bool ok() const { return bounds && conservation && no_negative_cycle && cost_matches; }
};

// Checks a flow against its network: bounds, conservation against the
// supplies, the reported cost, and Bellman-Ford on the residual graph.
inline Certificate certify(const netsettle::FlowNetwork& net, const netsettle::FlowResult& r) {
  Certificate c;
  const int n = net.num_nodes;
  std::vector<Money> outflow(n, 0);
  std::int64_t cost = 0;
  struct Edge {
    int u, v;
    std::int64_t cost;
  };
  std::vector<Edge> residual;
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const auto& a = net.arcs[k];
    Money f = r.flow.at(k);
    if (f < a.lower || (a.upper && f > *a.upper)) c.bounds = false;
    outflow[a.tail] += f;
    outflow[a.head] -= f;
    cost += a.cost * f;
    if (!a.upper || f < *a.upper) residual.push_back({a.tail, a.head, a.cost});
    if (f > a.lower) residual.push_back({a.head, a.tail, -a.cost});
  }
  for (int u = 0; u < n; ++u) {
    if (outflow[u] != net.supplies[u]) c.conservation = false;
  }
  c.cost_matches = cost == r.cost;
  std::vector<std::int64_t> dist(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const Edge& e : residual) {
      if (dist[e.u] + e.cost < dist[e.v]) {
        dist[e.v] = dist[e.u] + e.cost;
        changed = true;
      }
    }
    if (!changed) return c;
  }
  c.no_negative_cycle = false;
  return c;
}

}  // namespace oracle
