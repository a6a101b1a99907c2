#include "netsettle/exact.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>

#include "netsettle/flow.hpp"
#include "netsettle/preprocess.hpp"

namespace netsettle {

namespace {

// Union of selected cycles with per-node net inflow.
class CycleUnion {
 public:
  explicit CycleUnion(const RMultigraph& g)
      : g_(g), selected_(g.num_arcs(), 0), net_(g.num_nodes(), 0) {}

  bool has(ArcIndex e) const { return selected_[e] != 0; }

  // Whether adding the cycle keeps every node on it within its margins.
  // Nodes off the cycle are unaffected.
  bool fits(const Cycle& c) const {
    const std::size_t len = c.arcs.size();
    for (std::size_t i = 0; i < len; ++i) {
      ArcIndex in = c.arcs[i];
      ArcIndex out = c.arcs[(i + 1) % len];
      NodeIndex u = g_.arc(in).head;
      Money net = net_[u];
      if (!has(in)) net += g_.arc(in).amount;
      if (!has(out)) net -= g_.arc(out).amount;
      if (!g_.within_margins(u, net)) return false;
    }
    return true;
  }

  Money marginal(const Cycle& c) const {
    Money m = 0;
    for (ArcIndex e : c.arcs) {
      if (!has(e)) m += g_.arc(e).amount;
    }
    return m;
  }

  void add(const Cycle& c) {
    for (ArcIndex e : c.arcs) {
      if (has(e)) continue;
      selected_[e] = 1;
      arcs_.push_back(e);
      net_[g_.arc(e).head] += g_.arc(e).amount;
      net_[g_.arc(e).tail] -= g_.arc(e).amount;
    }
  }

  const std::vector<ArcIndex>& arcs() const { return arcs_; }

 private:
  const RMultigraph& g_;
  std::vector<char> selected_;
  std::vector<Money> net_;
  std::vector<ArcIndex> arcs_;
};

bool better(const Settlement& a, const Settlement& b) {
  if (a.total != b.total) return a.total > b.total;
  return a.arcs < b.arcs;
}

}  // namespace

CoverLowerBound::CoverLowerBound(const RMultigraph& g, std::vector<Cycle> cycles)
    : g_(g), cycles_(std::move(cycles)), cycles_at_node_(g.num_nodes()) {
  for (int k = 0; k < static_cast<int>(cycles_.size()); ++k) {
    for (ArcIndex e : cycles_[k].arcs) cycles_at_node_[g.arc(e).tail].push_back(k);
  }
}

Settlement CoverLowerBound::solve(std::span<const ArcIndex> included,
                                  std::span<const ArcIndex> excluded) const {
  std::vector<char> banned(g_.num_arcs(), 0), wanted(g_.num_arcs(), 0);
  for (ArcIndex e : excluded) banned[e] = 1;
  for (ArcIndex e : included) wanted[e] = 1;

  const int count = static_cast<int>(cycles_.size());
  std::vector<char> alive(count, 0);
  for (int k = 0; k < count; ++k) {
    alive[k] = std::none_of(cycles_[k].arcs.begin(), cycles_[k].arcs.end(),
                            [&](ArcIndex e) { return banned[e] != 0; });
  }

  CycleUnion chosen(g_);
  std::size_t uncovered = included.size();
  auto take = [&](int k) {
    for (ArcIndex e : cycles_[k].arcs) {
      if (wanted[e] && !chosen.has(e)) --uncovered;
    }
    chosen.add(cycles_[k]);
    alive[k] = 0;
  };

  // Covering phase: prefer cycles that cover many forced arcs and bring
  // much new amount.
  while (uncovered > 0) {
    int best = -1;
    Money best_score = 0;
    for (int k = 0; k < count; ++k) {
      if (!alive[k]) continue;
      if (!chosen.fits(cycles_[k])) {
        alive[k] = 0;
        continue;
      }
      Money hits = 0;
      for (ArcIndex e : cycles_[k].arcs) {
        if (wanted[e] && !chosen.has(e)) ++hits;
      }
      Money score = hits * chosen.marginal(cycles_[k]);
      if (score > best_score) {
        best = k;
        best_score = score;
      }
    }
    if (best < 0) break;
    take(best);
  }

  // Greedy phase: largest new amount first. A cycle's fit can only change
  // when a chosen cycle touches one of its nodes, and marginal amounts only
  // shrink, so a lazy heap with local re-checks is exact.
  for (int k = 0; k < count; ++k) {
    if (alive[k] && !chosen.fits(cycles_[k])) alive[k] = 0;
  }
  using Entry = std::pair<Money, int>;
  auto lower = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
  for (int k = 0; k < count; ++k) {
    if (alive[k]) heap.push({chosen.marginal(cycles_[k]), k});
  }
  while (!heap.empty()) {
    auto [key, k] = heap.top();
    heap.pop();
    if (!alive[k]) continue;
    Money now = chosen.marginal(cycles_[k]);
    if (now != key) {
      heap.push({now, k});
      continue;
    }
    if (now == 0) break;  // everything left is already absorbed
    take(k);
    for (ArcIndex e : cycles_[k].arcs) {
      for (int j : cycles_at_node_[g_.arc(e).tail]) {
        if (alive[j] && !chosen.fits(cycles_[j])) alive[j] = 0;
      }
    }
  }

  if (uncovered > 0) return {};
  return make_settlement(g_, chosen.arcs());
}

Settlement settle_bb_lb(const RMultigraph& g, std::span<const ArcIndex> included,
                        std::span<const ArcIndex> excluded, int max_len,
                        std::size_t cycle_budget) {
  CycleSet cs = enumerate_cycles(g, max_len, cycle_budget);
  CoverLowerBound lb(g, std::move(cs.cycles));
  Settlement s = lb.solve(included, excluded);
  s.flags.cycles_truncated = cs.truncated;
  return s;
}

namespace {

struct TreeNode {
  int depth = 0;
  std::vector<std::uint64_t> included;
};

Settlement search(const RMultigraph& g, const ExactOptions& options) {
  const int m = g.num_arcs();
  std::vector<ArcIndex> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](ArcIndex a, ArcIndex b) {
    return g.arc(a).amount > g.arc(b).amount;
  });

  CycleSet cs = enumerate_cycles(g, std::max(2, options.max_len), options.cycle_budget);
  CoverLowerBound lower_bound(g, std::move(cs.cycles));

  Settlement best;
  auto offer = [&](const Settlement& s) {
    if (better(s, best)) best = s;
  };

  const std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;
  std::deque<TreeNode> open;
  open.push_back({0, std::vector<std::uint64_t>(words, 0)});
  std::size_t visited = 0;
  std::vector<ArcIndex> plus, minus;
  while (!open.empty()) {
    TreeNode node;
    if (options.visit == Visit::kBfs) {
      node = std::move(open.front());
      open.pop_front();
    } else {
      node = std::move(open.back());
      open.pop_back();
    }
    if (++visited > options.node_budget) {
      throw BudgetExceeded("settle_bb: node budget exhausted");
    }
    plus.clear();
    minus.clear();
    for (int i = 0; i < node.depth; ++i) {
      if (node.included[i / 64] >> (i % 64) & 1) {
        plus.push_back(order[i]);
      } else {
        minus.push_back(order[i]);
      }
    }
    if (node.depth == m) {
      if (check_feasible(g, plus).ok()) offer(make_settlement(g, plus));
      continue;
    }
    std::optional<Money> ub = settlement_upper_bound(g, minus, plus);
    if (!ub || *ub < best.total) continue;
    Settlement lb = lower_bound.solve(plus, minus);
    offer(lb);
    if (lb.total == *ub) continue;  // subtree solved by its lower bound

    TreeNode without{node.depth + 1, node.included};
    TreeNode with{node.depth + 1, std::move(node.included)};
    with.included[node.depth / 64] |= std::uint64_t{1} << (node.depth % 64);
    if (options.visit == Visit::kBfs) {
      open.push_back(std::move(with));
      open.push_back(std::move(without));
    } else {
      open.push_back(std::move(without));
      open.push_back(std::move(with));
    }
  }
  best.flags.cycles_truncated = cs.truncated;
  return best;
}

}  // namespace

Settlement settle_bb(const RMultigraph& g, const ExactOptions& options) {
  std::vector<ArcIndex> kept = preprocess(g);
  if (kept.empty()) return {};
  RMultigraph sub = g.subgraph(kept);
  Settlement local = search(sub, options);
  std::vector<ArcIndex> arcs;
  for (ArcIndex e : local.arcs) arcs.push_back(sub.parent_arc(e));
  Settlement out = make_settlement(g, std::move(arcs));
  out.flags = local.flags;
  return out;
}

Settlement brute_force_optimal(const RMultigraph& g) {
  const int m = g.num_arcs();
  if (m > kBruteForceMaxArcs) {
    throw ContractViolation("brute_force_optimal: too many arcs");
  }
  const int n = g.num_nodes();
  Settlement best;
  std::vector<Money> net(n);
  std::vector<int> indeg(n), outdeg(n);
  std::vector<ArcIndex> arcs;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    std::fill(net.begin(), net.end(), 0);
    std::fill(indeg.begin(), indeg.end(), 0);
    std::fill(outdeg.begin(), outdeg.end(), 0);
    arcs.clear();
    Money total = 0;
    for (int e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      const Arc& a = g.arc(e);
      net[a.head] += a.amount;
      net[a.tail] -= a.amount;
      ++indeg[a.head];
      ++outdeg[a.tail];
      total += a.amount;
      arcs.push_back(e);
    }
    if (total < best.total) continue;
    bool ok = true;
    for (NodeIndex u = 0; u < n && ok; ++u) {
      if (indeg[u] == 0 && outdeg[u] == 0) continue;
      ok = indeg[u] > 0 && outdeg[u] > 0 && g.within_margins(u, net[u]);
    }
    if (!ok) continue;
    if (total > best.total || arcs < best.arcs) {
      best.arcs = arcs;
      best.total = total;
    }
  }
  return best;
}

}  // namespace netsettle
