#include "netsettle/flow.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <utility>

namespace netsettle {

int FlowNetwork::add_node() {
  supplies.push_back(0);
  return num_nodes++;
}

int FlowNetwork::add_arc(int tail, int head, std::int64_t cost, Money lower, Cap upper) {
  arcs.push_back({tail, head, cost, lower, upper});
  bundles.emplace_back();
  return static_cast<int>(arcs.size()) - 1;
}

FlowNetwork build_rflow_graph(const RMultigraph& g, std::span<const ArcIndex> removed,
                              std::span<const ArcIndex> forced, RFlowOptions options) {
  std::vector<char> state(g.num_arcs(), 0);  // 1 removed, 2 forced
  for (ArcIndex e : removed) state[e] = 1;
  for (ArcIndex e : forced) {
    if (state[e] == 1) throw ContractViolation("an arc is both removed and forced");
    state[e] = 2;
  }
  FlowNetwork net;
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) net.add_node();
  net.source = net.add_node();
  net.sink = net.add_node();

  std::map<std::pair<NodeIndex, NodeIndex>, int> bundle_of;
  for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
    if (state[e] == 1) continue;
    const Arc& a = g.arc(e);
    auto [it, fresh] = bundle_of.try_emplace({a.tail, a.head}, 0);
    if (fresh) it->second = net.add_arc(a.tail, a.head, -1, 0, Money{0});
    FlowArc& fa = net.arcs[it->second];
    *fa.upper += a.amount;
    if (state[e] == 2) fa.lower += a.amount;
    net.bundles[it->second].push_back(e);
  }
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    Money out_cap = -g.lower_margin(u);
    Cap in_cap = g.upper_margin(u);
    if (!options.clamp_margins && (out_cap < 0 || (in_cap && *in_cap < 0))) {
      throw ContractViolation("account '" + g.account(u).id + "' violates its own bounds");
    }
    net.add_arc(net.source, u, 0, 0, std::max<Money>(0, out_cap));
    if (in_cap) in_cap = std::max<Money>(0, *in_cap);
    net.add_arc(u, net.sink, 0, 0, in_cap);
  }
  net.add_arc(net.sink, net.source, 0, 0, kInfinite);
  return net;
}

namespace {

class Residual {
 public:
  explicit Residual(int n) : adj_(n) {}

  int add_edge(int u, int v, Money cap, std::int64_t cost) {
    int id = static_cast<int>(head_.size());
    head_.push_back(v);
    cap_.push_back(cap);
    cost_.push_back(cost);
    head_.push_back(u);
    cap_.push_back(0);
    cost_.push_back(-cost);
    adj_[u].push_back(id);
    adj_[v].push_back(id + 1);
    return id;
  }

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  Money residual(int edge) const { return cap_[edge]; }

  void push(int edge, Money amount) {
    cap_[edge] -= amount;
    cap_[edge ^ 1] += amount;
  }

  void drop_edge(int edge) {
    cap_[edge] = 0;
    cap_[edge ^ 1] = 0;
  }

  Money max_flow(int s, int t) {
    Money total = 0;
    std::vector<int> level(num_nodes()), it(num_nodes());
    while (true) {
      std::fill(level.begin(), level.end(), -1);
      std::deque<int> queue{s};
      level[s] = 0;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int e : adj_[u]) {
          if (cap_[e] > 0 && level[head_[e]] < 0) {
            level[head_[e]] = level[u] + 1;
            queue.push_back(head_[e]);
          }
        }
      }
      if (level[t] < 0) return total;
      std::fill(it.begin(), it.end(), 0);
      while (Money pushed = augment(s, t, std::numeric_limits<Money>::max(), level, it)) {
        total += pushed;
      }
    }
  }

  // Refines the current feasible flow to optimality. Costs must already be
  // scaled so that epsilon 1 implies optimality.
  void cost_scaling(std::int64_t max_cost) {
    const int n = num_nodes();
    potential_.assign(n, 0);
    excess_.assign(n, 0);
    std::int64_t eps = std::max<std::int64_t>(max_cost, 1);
    constexpr std::int64_t kAlpha = 8;
    do {
      eps = std::max<std::int64_t>(1, eps / kAlpha);
      refine(eps);
    } while (eps > 1);
  }

 private:
  Money augment(int u, int t, Money limit, const std::vector<int>& level, std::vector<int>& it) {
    if (u == t) return limit;
    for (; it[u] < static_cast<int>(adj_[u].size()); ++it[u]) {
      int e = adj_[u][it[u]];
      int v = head_[e];
      if (cap_[e] <= 0 || level[v] != level[u] + 1) continue;
      Money got = augment(v, t, std::min(limit, cap_[e]), level, it);
      if (got > 0) {
        push(e, got);
        return got;
      }
    }
    return 0;
  }

  std::int64_t reduced(int u, int e) const {
    return cost_[e] + potential_[u] - potential_[head_[e]];
  }

  void refine(std::int64_t eps) {
    const int n = num_nodes();
    for (int u = 0; u < n; ++u) {
      for (int e : adj_[u]) {
        if (cap_[e] > 0 && reduced(u, e) < 0) {
          excess_[u] -= cap_[e];
          excess_[head_[e]] += cap_[e];
          push(e, cap_[e]);
        }
      }
    }
    std::vector<std::size_t> current(n, 0);
    std::deque<int> active;
    std::vector<char> queued(n, 0);
    for (int u = 0; u < n; ++u) {
      if (excess_[u] > 0) {
        active.push_back(u);
        queued[u] = 1;
      }
    }
    while (!active.empty()) {
      int u = active.front();
      active.pop_front();
      queued[u] = 0;
      while (excess_[u] > 0) {
        if (current[u] == adj_[u].size()) {
          relabel(u, eps);
          current[u] = 0;
          continue;
        }
        int e = adj_[u][current[u]];
        if (cap_[e] > 0 && reduced(u, e) < 0) {
          Money delta = std::min(excess_[u], cap_[e]);
          int v = head_[e];
          push(e, delta);
          excess_[u] -= delta;
          excess_[v] += delta;
          if (excess_[v] > 0 && !queued[v]) {
            active.push_back(v);
            queued[v] = 1;
          }
        } else {
          ++current[u];
        }
      }
    }
  }

  void relabel(int u, std::int64_t eps) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (int e : adj_[u]) {
      if (cap_[e] > 0) best = std::max(best, potential_[head_[e]] - cost_[e]);
    }
    if (best == std::numeric_limits<std::int64_t>::min()) {
      throw ContractViolation("min_cost_flow: stranded excess");
    }
    potential_[u] = best - eps;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> head_;
  std::vector<Money> cap_;
  std::vector<std::int64_t> cost_;
  std::vector<std::int64_t> potential_;
  std::vector<Money> excess_;
};

bool infinite_negative_cycle(const FlowNetwork& net) {
  std::vector<std::int64_t> dist(net.num_nodes, 0);
  for (int round = 0; round <= net.num_nodes; ++round) {
    bool changed = false;
    for (const FlowArc& a : net.arcs) {
      if (a.upper || dist[a.tail] + a.cost >= dist[a.head]) continue;
      dist[a.head] = dist[a.tail] + a.cost;
      changed = true;
    }
    if (!changed) return false;
  }
  return true;
}

}  // namespace

FlowResult min_cost_flow(const FlowNetwork& net) {
  const int n = net.num_nodes;
  if (infinite_negative_cycle(net)) {
    throw ContractViolation("min_cost_flow: unbounded negative cycle");
  }
  FlowResult result;
  Money big = 1;
  std::vector<Money> excess(n, 0);
  for (int u = 0; u < n; ++u) {
    excess[u] += net.supplies[u];
    big += std::abs(net.supplies[u]);
  }
  std::int64_t max_cost = 0;
  for (const FlowArc& a : net.arcs) {
    if (a.upper && *a.upper < a.lower) return result;
    big += a.upper ? *a.upper : 0;
    big += std::abs(a.lower);
    max_cost = std::max(max_cost, std::abs(a.cost));
  }
  const std::int64_t scale = n + 3;
  Residual res(n + 2);
  std::vector<int> edge_of(net.arcs.size());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const FlowArc& a = net.arcs[k];
    Money cap = (a.upper ? *a.upper : big) - a.lower;
    excess[a.tail] -= a.lower;
    excess[a.head] += a.lower;
    edge_of[k] = res.add_edge(a.tail, a.head, cap, a.cost * scale);
  }
  const int s = n, t = n + 1;
  Money need = 0;
  std::vector<int> helpers;
  for (int u = 0; u < n; ++u) {
    if (excess[u] > 0) {
      helpers.push_back(res.add_edge(s, u, excess[u], 0));
      need += excess[u];
    } else if (excess[u] < 0) {
      helpers.push_back(res.add_edge(u, t, -excess[u], 0));
    }
  }
  if (res.max_flow(s, t) != need) return result;
  for (int e : helpers) res.drop_edge(e);
  res.cost_scaling(max_cost * scale);

  result.status = FlowStatus::kOptimal;
  result.flow.resize(net.arcs.size());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const FlowArc& a = net.arcs[k];
    Money cap = (a.upper ? *a.upper : big) - a.lower;
    result.flow[k] = a.lower + cap - res.residual(edge_of[k]);
    result.cost += a.cost * result.flow[k];
  }
  return result;
}

std::optional<Money> settlement_upper_bound(const RMultigraph& g,
                                            std::span<const ArcIndex> removed,
                                            std::span<const ArcIndex> forced) {
  FlowNetwork net = build_rflow_graph(g, removed, forced, {.clamp_margins = true});
  FlowResult r = min_cost_flow(net);
  if (r.status != FlowStatus::kOptimal) return std::nullopt;
  return -r.cost;
}

}  // namespace netsettle
