#include "netsettle/beam.hpp"

#include <algorithm>

#include "beam_core.hpp"
#include "netsettle/preprocess.hpp"

namespace netsettle {

BudgetState::BudgetState(const RMultigraph& g)
    : g_(&g), committed_mask_(g.num_arcs(), 0), net_(g.num_nodes(), 0) {}

Money BudgetState::marginal(std::span<const ArcIndex> arcs) const {
  std::vector<ArcIndex> fresh;
  for (ArcIndex e : arcs) {
    if (!contains(e)) fresh.push_back(e);
  }
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  return objective_value(*g_, fresh);
}

bool BudgetState::admits(std::span<const ArcIndex> arcs) const {
  std::vector<ArcIndex> fresh;
  for (ArcIndex e : arcs) {
    if (!contains(e)) fresh.push_back(e);
  }
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  std::vector<std::pair<NodeIndex, Money>> delta;
  for (ArcIndex e : fresh) {
    delta.emplace_back(g_->arc(e).head, g_->arc(e).amount);
    delta.emplace_back(g_->arc(e).tail, -g_->arc(e).amount);
  }
  std::sort(delta.begin(), delta.end());
  for (std::size_t i = 0; i < delta.size();) {
    NodeIndex u = delta[i].first;
    Money net = net_[u];
    for (; i < delta.size() && delta[i].first == u; ++i) net += delta[i].second;
    if (!g_->within_margins(u, net)) return false;
  }
  return true;
}

void BudgetState::commit(std::span<const ArcIndex> arcs) {
  for (ArcIndex e : arcs) {
    if (contains(e)) continue;
    committed_mask_[e] = 1;
    committed_.push_back(e);
    const Arc& a = g_->arc(e);
    net_[a.head] += a.amount;
    net_[a.tail] -= a.amount;
    total_ += a.amount;
  }
}

TrialUnion::TrialUnion(const BudgetState& base)
    : base_(base),
      arc_mark_(base.graph().num_arcs(), 0),
      node_mark_(base.graph().num_nodes(), 0),
      node_delta_(base.graph().num_nodes(), 0),
      probe_arc_(base.graph().num_arcs(), 0),
      probe_node_(base.graph().num_nodes(), 0),
      probe_delta_(base.graph().num_nodes(), 0) {}

void TrialUnion::reset() {
  if (++stamp_ == 0) {
    std::fill(arc_mark_.begin(), arc_mark_.end(), 0);
    std::fill(node_mark_.begin(), node_mark_.end(), 0);
    stamp_ = 1;
  }
  arcs_.clear();
  marginal_ = 0;
}

bool TrialUnion::probe(std::span<const ArcIndex> arcs) {
  if (++probe_stamp_ == 0) {
    std::fill(probe_arc_.begin(), probe_arc_.end(), 0);
    std::fill(probe_node_.begin(), probe_node_.end(), 0);
    probe_stamp_ = 1;
  }
  probe_nodes_.clear();
  probe_arcs_.clear();
  const RMultigraph& g = base_.graph();
  auto touch = [&](NodeIndex u, Money d) {
    if (probe_node_[u] != probe_stamp_) {
      probe_node_[u] = probe_stamp_;
      probe_delta_[u] = 0;
      probe_nodes_.push_back(u);
    }
    probe_delta_[u] += d;
  };
  for (ArcIndex e : arcs) {
    if (base_.contains(e) || arc_mark_[e] == stamp_ || probe_arc_[e] == probe_stamp_) continue;
    probe_arc_[e] = probe_stamp_;
    probe_arcs_.push_back(e);
    touch(g.arc(e).head, g.arc(e).amount);
    touch(g.arc(e).tail, -g.arc(e).amount);
  }
  for (NodeIndex u : probe_nodes_) {
    Money net = base_.spent_cap(u) + probe_delta_[u];
    if (node_mark_[u] == stamp_) net += node_delta_[u];
    if (!g.within_margins(u, net)) return false;
  }
  return true;
}

bool TrialUnion::fits(std::span<const ArcIndex> arcs) { return probe(arcs); }

bool TrialUnion::try_add(std::span<const ArcIndex> arcs) {
  if (!probe(arcs)) return false;
  const RMultigraph& g = base_.graph();
  for (ArcIndex e : probe_arcs_) {
    arc_mark_[e] = stamp_;
    arcs_.push_back(e);
    marginal_ += g.arc(e).amount;
  }
  for (NodeIndex u : probe_nodes_) {
    if (node_mark_[u] != stamp_) {
      node_mark_[u] = stamp_;
      node_delta_[u] = 0;
    }
    node_delta_[u] += probe_delta_[u];
  }
  return true;
}

std::vector<int> arc_frequencies(const RMultigraph& g, std::span<const Cycle> cycles) {
  return detail::frequencies(g, cycles);
}

Rational cycle_score(const RMultigraph& g, const Cycle& c, std::span<const int> freq) {
  for (ArcIndex e : c.arcs) {
    if (freq[e] < 1) throw ContractViolation("cycle_score: arc frequency below one");
  }
  return detail::exact_score(g, c, freq);
}

std::vector<int> beam_select(const RMultigraph& g, std::span<const Cycle> cycles, int k) {
  if (k < 1) throw ContractViolation("beam_select: k must be positive");
  detail::BeamEngine<Cycle> engine(g, cycles);
  return engine.select(k);
}

std::vector<std::pair<int, int>> admissible_pairs(std::span<const Cycle> selected,
                                                  const BudgetState& committed) {
  std::vector<char> adm(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) adm[i] = committed.admits(selected[i].arcs);
  return detail::pruned_pairs(committed.graph(), selected, committed, adm);
}

BeamRun beam_component(const RMultigraph& g, const BeamOptions& options) {
  if (options.k < 1) throw ContractViolation("settle_beam: k must be positive");
  CycleSet cs = enumerate_cycles(g, options.max_len, options.cycle_budget);
  BudgetState state(g);
  detail::BeamEngine<Cycle> engine(g, std::span<const Cycle>(cs.cycles));
  std::vector<int> picked = engine.run(options.k, state);
  BeamRun run;
  for (int i : picked) run.selected.push_back(cs.cycles[i]);
  run.arcs = state.committed();
  std::sort(run.arcs.begin(), run.arcs.end());
  run.truncated = cs.truncated;
  return run;
}

Settlement settle_beam(const RMultigraph& g, const BeamOptions& options) {
  std::vector<ArcIndex> kept = preprocess(g);
  ComponentSplit split = split_components(g, kept);
  std::vector<ArcIndex> arcs;
  SolveFlags flags;
  for (const auto& comp : split.components) {
    RMultigraph sub = g.subgraph(comp);
    BeamRun run = beam_component(sub, options);
    for (ArcIndex e : run.arcs) arcs.push_back(sub.parent_arc(e));
    flags.cycles_truncated = flags.cycles_truncated || run.truncated;
  }
  Settlement s = make_settlement(g, std::move(arcs));
  s.flags = flags;
  return s;
}

}  // namespace netsettle
