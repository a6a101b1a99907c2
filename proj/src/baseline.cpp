#include "netsettle/baseline.hpp"

#include <numeric>
#include <set>

#include "netsettle/preprocess.hpp"

namespace netsettle {

Settlement rfb(const RMultigraph& g) {
  const int n = g.num_nodes();
  std::vector<char> alive(g.num_arcs(), 1);
  std::vector<Money> net(n, 0);
  std::vector<int> degree(n, 0);
  for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
    net[g.arc(e).head] += g.arc(e).amount;
    net[g.arc(e).tail] -= g.arc(e).amount;
    ++degree[g.arc(e).head];
    ++degree[g.arc(e).tail];
  }
  auto violating = [&](NodeIndex u) { return degree[u] > 0 && !g.within_margins(u, net[u]); };
  auto drop = [&](ArcIndex e) {
    alive[e] = 0;
    net[g.arc(e).head] -= g.arc(e).amount;
    net[g.arc(e).tail] += g.arc(e).amount;
    --degree[g.arc(e).head];
    --degree[g.arc(e).tail];
  };

  while (true) {
    std::set<std::pair<Money, ArcIndex>> candidates;
    std::vector<char> bad(n, 0);
    auto enlist = [&](NodeIndex u) {
      for (auto list : {g.in_arcs(u), g.out_arcs(u)}) {
        for (ArcIndex e : list) {
          if (alive[e]) candidates.insert({g.arc(e).amount, e});
        }
      }
    };
    auto delist = [&](NodeIndex u) {
      for (auto list : {g.in_arcs(u), g.out_arcs(u)}) {
        for (ArcIndex e : list) {
          NodeIndex other = g.arc(e).tail == u ? g.arc(e).head : g.arc(e).tail;
          if (!bad[other]) candidates.erase({g.arc(e).amount, e});
        }
      }
    };
    for (NodeIndex u = 0; u < n; ++u) {
      if (violating(u)) {
        bad[u] = 1;
        enlist(u);
      }
    }
    bool removed = false;
    while (!candidates.empty()) {
      ArcIndex e = candidates.begin()->second;
      candidates.erase(candidates.begin());
      drop(e);
      removed = true;
      for (NodeIndex u : {g.arc(e).tail, g.arc(e).head}) {
        bool now = violating(u);
        if (now == static_cast<bool>(bad[u])) continue;
        bad[u] = now;
        if (now) {
          enlist(u);
        } else {
          delist(u);
        }
      }
    }

    std::vector<ArcIndex> arcs;
    for (ArcIndex e = 0; e < g.num_arcs(); ++e) {
      if (alive[e]) arcs.push_back(e);
    }
    std::vector<ArcIndex> core = d_core_11(g, arcs);
    if (core.size() == arcs.size() && !removed) return make_settlement(g, std::move(arcs));
    std::vector<char> keep(g.num_arcs(), 0);
    for (ArcIndex e : core) keep[e] = 1;
    for (ArcIndex e : arcs) {
      if (!keep[e]) drop(e);
    }
  }
}

}  // namespace netsettle
