#pragma once

// Beam machinery shared by the cycle solver and the path refinement. Items
// are anything with `arcs` and `amount` members.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <span>
#include <vector>

#include "netsettle/beam.hpp"

namespace netsettle::detail {

template <class Item>
std::vector<int> frequencies(const RMultigraph& g, std::span<const Item> items) {
  std::vector<int> freq(g.num_arcs(), 0);
  for (const Item& it : items) {
    for (ArcIndex e : it.arcs) ++freq[e];
  }
  return freq;
}

template <class Item>
Rational exact_score(const RMultigraph& g, const Item& item, std::span<const int> freq) {
  Rational weighted = 0;
  for (ArcIndex e : item.arcs) weighted += Rational(g.arc(e).amount, freq[e]);
  return Rational(item.amount) / weighted;
}

// Position of each item when sorted by score (descending), ties by index.
template <class Item>
std::vector<int> score_ranks(const RMultigraph& g, std::span<const Item> items,
                             std::span<const int> freq) {
  const int n = static_cast<int>(items.size());
  std::vector<double> approx(n);
  for (int i = 0; i < n; ++i) {
    double weighted = 0;
    for (ArcIndex e : items[i].arcs) {
      weighted += static_cast<double>(g.arc(e).amount) / freq[e];
    }
    approx[i] = static_cast<double>(items[i].amount) / weighted;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double gap = approx[a] - approx[b];
    if (std::abs(gap) > 1e-9 * std::max(approx[a], approx[b])) return gap > 0;
    Rational sa = exact_score(g, items[a], freq), sb = exact_score(g, items[b], freq);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[order[r]] = r;
  return rank;
}

// Whether the union of two items fits on top of the state.
template <class Item>
bool pair_fits(TrialUnion& trial, const Item& a, const Item& b, std::vector<ArcIndex>& buf) {
  buf.assign(a.arcs.begin(), a.arcs.end());
  buf.insert(buf.end(), b.arcs.begin(), b.arcs.end());
  trial.reset();
  return trial.fits(buf);
}

// Nodes where the item alone breaks a margin on top of the state.
template <class Item>
std::vector<NodeIndex> violated_nodes(const RMultigraph& g, const Item& item,
                                      const BudgetState& state) {
  std::vector<std::pair<NodeIndex, Money>> delta;
  std::vector<ArcIndex> arcs(item.arcs.begin(), item.arcs.end());
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  for (ArcIndex e : arcs) {
    if (state.contains(e)) continue;
    delta.emplace_back(g.arc(e).head, g.arc(e).amount);
    delta.emplace_back(g.arc(e).tail, -g.arc(e).amount);
  }
  std::sort(delta.begin(), delta.end());
  std::vector<NodeIndex> out;
  for (std::size_t i = 0; i < delta.size();) {
    NodeIndex u = delta[i].first;
    Money net = state.spent_cap(u);
    for (; i < delta.size() && delta[i].first == u; ++i) net += delta[i].second;
    if (!g.within_margins(u, net)) out.push_back(u);
  }
  return out;
}

// Pairs whose union fits on top of the state. A pair of admissible items
// with no common node always fits. A pair with an inadmissible member can
// only fit if the partner touches every node that member breaks, so its
// candidates come from one such node.
template <class Item>
std::vector<std::pair<int, int>> pruned_pairs(const RMultigraph& g, std::span<const Item> sel,
                                              const BudgetState& state,
                                              const std::vector<char>& adm) {
  const int n = static_cast<int>(sel.size());
  std::vector<std::vector<int>> at_node(g.num_nodes());
  for (int i = 0; i < n; ++i) {
    for (ArcIndex e : sel[i].arcs) {
      for (NodeIndex u : {g.arc(e).tail, g.arc(e).head}) {
        auto& list = at_node[u];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
  }
  TrialUnion trial(state);
  std::vector<ArcIndex> buf;
  std::vector<std::pair<int, int>> out;
  auto test = [&](int i, int j) {
    if (pair_fits(trial, sel[i], sel[j], buf)) out.emplace_back(std::min(i, j), std::max(i, j));
  };
  std::vector<int> seen(n, -1);
  for (int i = 0; i < n; ++i) {
    if (adm[i]) {
      for (ArcIndex e : sel[i].arcs) {
        for (NodeIndex u : {g.arc(e).tail, g.arc(e).head}) {
          for (int j : at_node[u]) {
            if (j > i && adm[j] && seen[j] != i) {
              seen[j] = i;
              test(i, j);
            }
          }
        }
      }
      for (int j = i + 1; j < n; ++j) {
        if (adm[j] && seen[j] != i) out.emplace_back(i, j);
      }
    } else {
      std::vector<NodeIndex> broken = violated_nodes(g, sel[i], state);
      if (broken.empty()) continue;
      NodeIndex pivot = *std::min_element(broken.begin(), broken.end(), [&](NodeIndex a, NodeIndex b) {
        return at_node[a].size() < at_node[b].size();
      });
      for (int j : at_node[pivot]) {
        if (j == i || (!adm[j] && j < i)) continue;
        test(i, j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Item>
class BeamEngine {
 public:
  BeamEngine(const RMultigraph& g, std::span<const Item> items)
      : g_(g), items_(items), alive_(items.size(), 1), covered_(g.num_arcs(), 0) {
    std::vector<int> freq = frequencies(g, items);
    rank_ = score_ranks(g, items, std::span<const int>(freq));
    order_.resize(items.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) { return better(key(a, items_[a].amount), key(b, items_[b].amount)); });
  }

  // Greedy max cover over the live items.
  std::vector<int> select(int k) {
    std::erase_if(order_, [&](int i) { return !alive_[i]; });
    ++stamp_;
    auto worse = [&](const Key& a, const Key& b) { return better(b, a); };
    std::priority_queue<Key, std::vector<Key>, decltype(worse)> heap(worse);
    std::vector<int> chosen;
    std::size_t pos = 0;
    while (static_cast<int>(chosen.size()) < k) {
      bool from_list = pos < order_.size();
      if (!from_list && heap.empty()) break;
      Key top;
      if (from_list) top = key(order_[pos], items_[order_[pos]].amount);
      if (!heap.empty() && (!from_list || better(heap.top(), top))) {
        top = heap.top();
        heap.pop();
      } else {
        ++pos;
      }
      Money now = 0;
      for (ArcIndex e : items_[top.index].arcs) {
        if (covered_[e] != stamp_) now += g_.arc(e).amount;
      }
      if (now != top.cover) {
        heap.push(key(top.index, now));
        continue;
      }
      chosen.push_back(top.index);
      for (ArcIndex e : items_[top.index].arcs) covered_[e] = stamp_;
    }
    return chosen;
  }

  // Runs batches until the pool is empty; returns committed item indices.
  std::vector<int> run(int k, BudgetState& state) {
    std::vector<std::vector<int>> by_arc(g_.num_arcs());
    for (int i = 0; i < static_cast<int>(items_.size()); ++i) {
      for (ArcIndex e : items_[i].arcs) by_arc[e].push_back(i);
    }
    std::vector<int> committed;
    TrialUnion trial(state);
    std::vector<Item> beam_items;
    while (true) {
      std::vector<int> beam = select(k);
      if (beam.empty()) break;
      const int b = static_cast<int>(beam.size());
      beam_items.clear();
      for (int i : beam) beam_items.push_back(items_[i]);
      std::vector<char> adm(b);
      for (int p = 0; p < b; ++p) adm[p] = state.admits(beam_items[p].arcs);
      auto pairs = pruned_pairs(g_, std::span<const Item>(beam_items), state, adm);

      std::vector<int> by_score(b);
      std::iota(by_score.begin(), by_score.end(), 0);
      std::sort(by_score.begin(), by_score.end(), [&](int x, int y) {
        return rank_[beam[x]] < rank_[beam[y]];
      });

      Money best = 0;
      std::vector<int> best_members;
      std::vector<ArcIndex> best_arcs;
      std::vector<int> members;
      std::vector<ArcIndex> seed;
      auto evaluate = [&](int first, int second) {
        trial.reset();
        members.clear();
        seed.assign(beam_items[first].arcs.begin(), beam_items[first].arcs.end());
        members.push_back(first);
        if (second >= 0) {
          seed.insert(seed.end(), beam_items[second].arcs.begin(), beam_items[second].arcs.end());
          members.push_back(second);
        }
        trial.try_add(seed);
        for (int p : by_score) {
          if (p == first || p == second) continue;
          if (trial.try_add(beam_items[p].arcs)) members.push_back(p);
        }
        if (trial.marginal() > best) {
          best = trial.marginal();
          best_members = members;
          best_arcs = trial.arcs();
        }
      };
      // No seed can beat the fresh amount of the whole beam, and ties keep
      // the earlier seed, so reaching it ends the batch.
      Money ceiling = 0;
      ++stamp_;
      for (const Item& it : beam_items) {
        for (ArcIndex e : it.arcs) {
          if (covered_[e] == stamp_ || state.contains(e)) continue;
          covered_[e] = stamp_;
          ceiling += g_.arc(e).amount;
        }
      }
      // Seeds in canonical order: each admissible item alone, then its pairs.
      std::size_t next_pair = 0;
      for (int p = 0; p < b && best < ceiling; ++p) {
        if (adm[p]) evaluate(p, -1);
        while (next_pair < pairs.size() && pairs[next_pair].first == p && best < ceiling) {
          evaluate(p, pairs[next_pair].second);
          ++next_pair;
        }
      }
      for (int i : beam) alive_[i] = 0;
      if (best > 0) {
        state.commit(best_arcs);
        for (int p : best_members) committed.push_back(beam[p]);
        for (ArcIndex e : best_arcs) {
          for (int i : by_arc[e]) {
            if (!alive_[i]) continue;
            bool absorbed = std::all_of(items_[i].arcs.begin(), items_[i].arcs.end(),
                                        [&](ArcIndex a) { return state.contains(a); });
            if (absorbed) alive_[i] = 0;
          }
        }
      }
    }
    std::sort(committed.begin(), committed.end());
    return committed;
  }

 private:
  struct Key {
    Money cover = 0;
    int rank = 0;
    Money amount = 0;
    int index = 0;
  };

  Key key(int i, Money cover) const { return {cover, rank_[i], items_[i].amount, i}; }

  static bool better(const Key& a, const Key& b) {
    if (a.cover != b.cover) return a.cover > b.cover;
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.amount != b.amount) return a.amount > b.amount;
    return a.index < b.index;
  }

  const RMultigraph& g_;
  std::span<const Item> items_;
  std::vector<int> rank_;
  std::vector<int> order_;
  std::vector<char> alive_;
  std::vector<unsigned> covered_;
  unsigned stamp_ = 0;
};

}  // namespace netsettle::detail
