#include "netsettle/ordering.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "netsettle/preprocess.hpp"

namespace netsettle {

Settlement to_settlement(const RMultigraph& g, const OrderedSettlement& ordered) {
  std::vector<ArcIndex> arcs;
  for (const TimedArc& t : ordered.arcs) arcs.push_back(t.arc);
  Settlement s = make_settlement(g, std::move(arcs));
  s.flags = ordered.flags;
  return s;
}

Money ub_in(const RMultigraph& g, NodeIndex u) {
  Money in = 0;
  for (ArcIndex e : g.in_arcs(u)) in += g.arc(e).amount;
  const CustomerAccount& a = g.account(u);
  if (!a.cap) return in;
  return std::min(in, *a.cap + a.bl_a - a.bl_r);
}

OrderedSettlement redefine_floors(const RMultigraph& g, const RoundSolver& solve) {
  OrderedSettlement out;
  std::vector<CustomerAccount> current = g.accounts();
  std::vector<ArcIndex> remaining(g.num_arcs());
  std::iota(remaining.begin(), remaining.end(), 0);
  int round = 0;
  while (!remaining.empty()) {
    RMultigraph sub = g.subgraph(remaining);
    std::vector<NodeIndex> origin(sub.num_nodes());
    std::vector<CustomerAccount> raised;
    for (NodeIndex v = 0; v < sub.num_nodes(); ++v) {
      origin[v] = *g.find_node(sub.account(v).id);
      CustomerAccount a = current[origin[v]];
      for (ArcIndex e : sub.in_arcs(v)) a.floor += sub.arc(e).amount;
      raised.push_back(std::move(a));
    }
    RMultigraph round_graph = sub.with_accounts(std::move(raised));
    Settlement s = solve(round_graph);
    if (!check_feasible(round_graph, s).ok()) {
      throw ContractViolation("redefine_floors: round solver returned an infeasible set");
    }
    out.flags.merge(s.flags);
    if (s.arcs.empty()) break;
    ++round;
    std::vector<Money> net = net_flows(round_graph, s.arcs);
    for (NodeIndex v = 0; v < sub.num_nodes(); ++v) {
      current[origin[v]].bl_a += net[v];
      current[origin[v]].bl_r += net[v];
    }
    std::vector<char> done(g.num_arcs(), 0);
    for (ArcIndex e : s.arcs) {
      ArcIndex orig = sub.parent_arc(e);
      out.arcs.push_back({orig, round});
      done[orig] = 1;
    }
    std::erase_if(remaining, [&](ArcIndex e) { return done[e] != 0; });
  }
  return out;
}

std::vector<int> max_subset_within(std::span<const Money> amounts, Money budget) {
  const int n = static_cast<int>(amounts.size());
  std::vector<int> chosen;
  if (n == 0 || budget <= 0) return chosen;
  Money total = std::accumulate(amounts.begin(), amounts.end(), Money{0});
  if (total <= budget) {
    chosen.resize(n);
    std::iota(chosen.begin(), chosen.end(), 0);
    return chosen;
  }
  if (n <= 24) {
    // Meet in the middle over the two halves.
    const int h = n / 2;
    std::vector<std::pair<Money, std::uint32_t>> left;
    for (std::uint32_t mask = 0; mask < (1u << h); ++mask) {
      Money s = 0;
      for (int i = 0; i < h; ++i) {
        if (mask >> i & 1) s += amounts[i];
      }
      if (s <= budget) left.emplace_back(s, mask);
    }
    std::sort(left.begin(), left.end());
    Money best = -1;
    std::uint64_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (1u << (n - h)); ++mask) {
      Money s = 0;
      for (int i = 0; i < n - h; ++i) {
        if (mask >> i & 1) s += amounts[h + i];
      }
      if (s > budget) continue;
      auto it = std::upper_bound(left.begin(), left.end(),
                                 std::make_pair(budget - s, std::numeric_limits<std::uint32_t>::max()));
      if (it == left.begin()) continue;
      --it;
      if (it->first + s > best) {
        best = it->first + s;
        best_mask = it->second | (std::uint64_t{mask} << h);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (best_mask >> i & 1) chosen.push_back(i);
    }
    return chosen;
  }
  constexpr Money kDpLimit = 10'000'000;
  if (total <= kDpLimit) {
    const Money top = std::min(total, budget);
    std::vector<int> last(top + 1, -1);  // item that first reached each sum
    std::vector<char> reach(top + 1, 0);
    reach[0] = 1;
    for (int i = 0; i < n; ++i) {
      for (Money s = top; s >= amounts[i]; --s) {
        if (!reach[s] && reach[s - amounts[i]]) {
          reach[s] = 1;
          last[s] = i;
        }
      }
    }
    Money s = top;
    while (!reach[s]) --s;
    while (s > 0) {
      chosen.push_back(last[s]);
      s -= amounts[last[s]];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return amounts[a] > amounts[b]; });
  Money left = budget;
  for (int i : order) {
    if (amounts[i] <= left) {
      chosen.push_back(i);
      left -= amounts[i];
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

class Pruner {
 public:
  Pruner(const RMultigraph& g, std::vector<int> ts) : g_(g), ts_(std::move(ts)) {}

  // Removes e and every later-round payment that the removal may have
  // defunded, following arcs out of the head one round later.
  void cascade(ArcIndex start) {
    std::deque<ArcIndex> queue{start};
    while (!queue.empty()) {
      ArcIndex e = queue.front();
      queue.pop_front();
      if (ts_[e] == 0) continue;
      int t = ts_[e];
      ts_[e] = 0;
      for (ArcIndex f : g_.out_arcs(g_.arc(e).head)) {
        if (ts_[f] == t + 1) queue.push_back(f);
      }
    }
  }

  std::vector<ArcIndex> alive() const {
    std::vector<ArcIndex> arcs;
    for (ArcIndex e = 0; e < g_.num_arcs(); ++e) {
      if (ts_[e] > 0) arcs.push_back(e);
    }
    return arcs;
  }

  std::vector<ArcIndex> in_order() const {
    std::vector<ArcIndex> arcs = alive();
    std::stable_sort(arcs.begin(), arcs.end(), [&](ArcIndex a, ArcIndex b) { return ts_[a] < ts_[b]; });
    return arcs;
  }

  // Peels non-core arcs until the survivors form a (1,1)-D-core.
  void peel() {
    while (true) {
      std::vector<ArcIndex> arcs = alive();
      std::vector<ArcIndex> core = d_core_11(g_, arcs);
      if (core.size() == arcs.size()) return;
      std::vector<char> in_core(g_.num_arcs(), 0);
      for (ArcIndex e : core) in_core[e] = 1;
      for (ArcIndex e : in_order()) {
        if (!in_core[e]) cascade(e);
      }
    }
  }

  // Removes one arc that breaks a prefix floor or the final cap; returns
  // false when the current set is clean.
  bool repair_once() {
    std::vector<Money> bl_a(g_.num_nodes());
    for (NodeIndex u = 0; u < g_.num_nodes(); ++u) bl_a[u] = g_.account(u).bl_a;
    for (ArcIndex e : in_order()) {
      const Arc& a = g_.arc(e);
      if (bl_a[a.tail] - a.amount < g_.account(a.tail).floor) {
        cascade(e);
        return true;
      }
      bl_a[a.tail] -= a.amount;
      bl_a[a.head] += a.amount;
    }
    std::vector<Money> net = net_flows(g_, alive());
    for (NodeIndex u = 0; u < g_.num_nodes(); ++u) {
      Cap hi = g_.upper_margin(u);
      if (!hi || net[u] <= *hi) continue;
      ArcIndex latest = -1;
      for (ArcIndex e : g_.in_arcs(u)) {
        if (ts_[e] > 0 && (latest < 0 || ts_[e] >= ts_[latest])) latest = e;
      }
      if (latest < 0) continue;
      cascade(latest);
      return true;
    }
    return false;
  }

  int ts(ArcIndex e) const { return ts_[e]; }

 private:
  const RMultigraph& g_;
  std::vector<int> ts_;  // 0 once removed or never selected
};

}  // namespace

OrderedSettlement select_and_order(const RMultigraph& g) {
  OrderedSettlement out;
  const int n = g.num_nodes();
  std::vector<Money> bl_a(n), bl_r(n);
  for (NodeIndex u = 0; u < n; ++u) {
    bl_a[u] = g.account(u).bl_a;
    bl_r[u] = g.account(u).bl_r;
  }
  std::vector<int> ts(g.num_arcs(), 0);
  std::vector<ArcIndex> candidates;
  std::vector<Money> amounts;
  for (int round = 1;; ++round) {
    std::vector<ArcIndex> picked;
    for (NodeIndex u = 0; u < n; ++u) {
      Money budget = bl_a[u] - g.account(u).floor;
      if (budget <= 0) continue;
      candidates.clear();
      amounts.clear();
      for (ArcIndex e : g.out_arcs(u)) {
        const Arc& a = g.arc(e);
        const Cap& cap = g.account(a.head).cap;
        if (ts[e] != 0 || a.amount > budget) continue;
        if (cap && a.amount + bl_r[a.head] > *cap) continue;
        candidates.push_back(e);
        amounts.push_back(a.amount);
      }
      for (int i : max_subset_within(amounts, budget)) picked.push_back(candidates[i]);
    }
    if (picked.empty()) break;
    for (ArcIndex e : picked) {
      const Arc& a = g.arc(e);
      ts[e] = round;
      bl_a[a.tail] -= a.amount;
      bl_r[a.tail] -= a.amount;
      bl_a[a.head] += a.amount;
      bl_r[a.head] += a.amount;
    }
    for (NodeIndex u = 0; u < n; ++u) {
      const Cap& cap = g.account(u).cap;
      if (cap && bl_r[u] > *cap) out.flags.cap_overshoot = true;
    }
  }

  Pruner pruner(g, std::move(ts));
  do {
    pruner.peel();
  } while (pruner.repair_once());
  for (ArcIndex e : pruner.in_order()) out.arcs.push_back({e, pruner.ts(e)});
  return out;
}

}  // namespace netsettle
