#include "netsettle/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>

namespace netsettle {

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Date parse_date(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw std::invalid_argument("bad date '" + std::string(iso) + "'");
  }
  using namespace std::chrono;
  year_month_day ymd{year{parse_int(iso.substr(0, 4))},
                     month{static_cast<unsigned>(parse_int(iso.substr(5, 2)))},
                     day{static_cast<unsigned>(parse_int(iso.substr(8, 2)))}};
  if (!ymd.ok()) throw std::invalid_argument("bad date '" + std::string(iso) + "'");
  return sys_days{ymd};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Money parse_decimal_money(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("bad amount '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  bool negative = false;
  std::string_view s = text;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() || frac.size() > 2) fail();
  if (dot != std::string_view::npos && frac.empty()) fail();
  Money units = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') fail();
    if (__builtin_mul_overflow(units, 10, &units) ||
        __builtin_add_overflow(units, c - '0', &units)) {
      fail();
    }
  }
  Money cents = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    char c = i < frac.size() ? frac[i] : '0';
    if (c < '0' || c > '9') fail();
    cents = cents * 10 + (c - '0');
  }
  Money out;
  if (__builtin_mul_overflow(units, 100, &out) || __builtin_add_overflow(out, cents, &out)) {
    fail();
  }
  return negative ? -out : out;
}

Date window_end(const Receivable& r) {
  return std::min(r.indate + std::chrono::days{r.life}, r.duedate);
}

bool is_valid_on(const Receivable& r, Date today) {
  return r.indate <= today && today <= window_end(r);
}

RMultigraph::RMultigraph(std::vector<CustomerAccount> accounts,
                         std::vector<Receivable> receivables) {
  std::sort(accounts.begin(), accounts.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    if (!node_by_id_.emplace(accounts[i].id, static_cast<NodeIndex>(i)).second) {
      throw IngestionError("duplicate account id '" + accounts[i].id + "'");
    }
  }
  std::vector<ArcIndex> order(receivables.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ArcIndex a, ArcIndex b) {
    return receivables[a].id < receivables[b].id;
  });
  receivables_.reserve(receivables.size());
  arcs_.reserve(receivables.size());
  parent_arc_.reserve(receivables.size());
  for (ArcIndex k : order) {
    Receivable& r = receivables[k];
    auto tail = node_by_id_.find(r.debtor);
    auto head = node_by_id_.find(r.creditor);
    if (tail == node_by_id_.end() || head == node_by_id_.end()) {
      throw IngestionError("receivable '" + r.id + "' references an unknown account");
    }
    if (tail->second == head->second) {
      throw IngestionError("receivable '" + r.id + "' has debtor equal to creditor");
    }
    if (r.amount <= 0) {
      throw IngestionError("receivable '" + r.id + "' has a non-positive amount");
    }
    if (r.indate > r.duedate || r.life < 0) {
      throw IngestionError("receivable '" + r.id + "' has an inconsistent date window");
    }
    auto e = static_cast<ArcIndex>(receivables_.size());
    if (!arc_by_id_.emplace(r.id, e).second) {
      throw IngestionError("duplicate receivable id '" + r.id + "'");
    }
    arcs_.push_back({tail->second, head->second, r.amount});
    parent_arc_.push_back(e);
    receivables_.push_back(std::move(r));
  }
  accounts_ = std::move(accounts);
  index();
}

void RMultigraph::index() {
  const int n = num_nodes();
  out_start_.assign(n + 1, 0);
  in_start_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_start_[a.tail + 1];
    ++in_start_[a.head + 1];
  }
  for (int u = 0; u < n; ++u) {
    out_start_[u + 1] += out_start_[u];
    in_start_[u + 1] += in_start_[u];
  }
  out_list_.resize(arcs_.size());
  in_list_.resize(arcs_.size());
  std::vector<ArcIndex> out_pos(out_start_.begin(), out_start_.end() - 1);
  std::vector<ArcIndex> in_pos(in_start_.begin(), in_start_.end() - 1);
  for (ArcIndex e = 0; e < num_arcs(); ++e) {
    out_list_[out_pos[arcs_[e].tail]++] = e;
    in_list_[in_pos[arcs_[e].head]++] = e;
  }
}

std::span<const ArcIndex> RMultigraph::out_arcs(NodeIndex u) const {
  return {out_list_.data() + out_start_[u], out_list_.data() + out_start_[u + 1]};
}

std::span<const ArcIndex> RMultigraph::in_arcs(NodeIndex u) const {
  return {in_list_.data() + in_start_[u], in_list_.data() + in_start_[u + 1]};
}

std::optional<NodeIndex> RMultigraph::find_node(std::string_view id) const {
  auto it = node_by_id_.find(std::string(id));
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcIndex> RMultigraph::find_arc(std::string_view id) const {
  auto it = arc_by_id_.find(std::string(id));
  if (it == arc_by_id_.end()) return std::nullopt;
  return it->second;
}

Money RMultigraph::lower_margin(NodeIndex u) const {
  return accounts_[u].floor - accounts_[u].bl_a;
}

Cap RMultigraph::upper_margin(NodeIndex u) const {
  if (!accounts_[u].cap) return kInfinite;
  return *accounts_[u].cap - accounts_[u].bl_r;
}

bool RMultigraph::within_margins(NodeIndex u, Money net) const {
  if (net < lower_margin(u)) return false;
  Cap up = upper_margin(u);
  return !up || net <= *up;
}

RMultigraph RMultigraph::subgraph(std::span<const ArcIndex> arcs) const {
  std::vector<ArcIndex> sorted(arcs.begin(), arcs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<char> used(num_nodes(), 0);
  for (ArcIndex e : sorted) {
    used[arcs_[e].tail] = 1;
    used[arcs_[e].head] = 1;
  }
  RMultigraph out;
  std::vector<NodeIndex> remap(num_nodes(), -1);
  for (NodeIndex u = 0; u < num_nodes(); ++u) {
    if (!used[u]) continue;
    remap[u] = out.num_nodes();
    out.node_by_id_.emplace(accounts_[u].id, out.num_nodes());
    out.accounts_.push_back(accounts_[u]);
  }
  for (ArcIndex e : sorted) {
    out.arc_by_id_.emplace(receivables_[e].id, out.num_arcs());
    out.arcs_.push_back({remap[arcs_[e].tail], remap[arcs_[e].head], arcs_[e].amount});
    out.receivables_.push_back(receivables_[e]);
    out.parent_arc_.push_back(e);
  }
  out.index();
  return out;
}

RMultigraph RMultigraph::with_accounts(std::vector<CustomerAccount> accounts) const {
  if (accounts.size() != accounts_.size()) {
    throw ContractViolation("with_accounts: account count mismatch");
  }
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    if (accounts[i].id != accounts_[i].id) {
      throw ContractViolation("with_accounts: account order mismatch");
    }
  }
  RMultigraph out = *this;
  out.accounts_ = std::move(accounts);
  return out;
}

RMultigraph build_graph(std::vector<CustomerAccount> accounts,
                        const std::vector<Receivable>& receivables, Date today) {
  for (const CustomerAccount& a : accounts) {
    if (a.bl_a < a.floor) {
      throw IngestionError("account '" + a.id + "' is below its floor");
    }
    if (a.cap && a.bl_r > *a.cap) {
      throw IngestionError("account '" + a.id + "' is above its cap");
    }
  }
  std::vector<Receivable> valid;
  for (const Receivable& r : receivables) {
    if (is_valid_on(r, today)) valid.push_back(r);
  }
  return RMultigraph(std::move(accounts), std::move(valid));
}

void SolveFlags::merge(const SolveFlags& other) {
  cycles_truncated = cycles_truncated || other.cycles_truncated;
  paths_truncated = paths_truncated || other.paths_truncated;
  exact_fallbacks += other.exact_fallbacks;
  cap_overshoot = cap_overshoot || other.cap_overshoot;
}

Settlement make_settlement(const RMultigraph& g, std::vector<ArcIndex> arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  Settlement s;
  s.total = objective_value(g, arcs);
  s.arcs = std::move(arcs);
  return s;
}

std::vector<std::string> arc_ids(const RMultigraph& g, const Settlement& s) {
  std::vector<std::string> ids;
  ids.reserve(s.arcs.size());
  for (ArcIndex e : s.arcs) ids.push_back(g.receivable(e).id);
  return ids;
}

const char* to_string(Side side) {
  switch (side) {
    case Side::kFloor: return "floor";
    case Side::kCap: return "cap";
    case Side::kNoIncoming: return "no_incoming";
    case Side::kNoOutgoing: return "no_outgoing";
  }
  return "?";
}

std::vector<Money> net_flows(const RMultigraph& g, std::span<const ArcIndex> arcs) {
  std::vector<Money> net(g.num_nodes(), 0);
  for (ArcIndex e : arcs) {
    net[g.arc(e).head] += g.arc(e).amount;
    net[g.arc(e).tail] -= g.arc(e).amount;
  }
  return net;
}

FeasibilityVerdict check_feasible(const RMultigraph& g, std::span<const ArcIndex> arcs) {
  const int n = g.num_nodes();
  std::vector<Money> net(n, 0);
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  std::vector<char> seen(g.num_arcs(), 0);
  for (ArcIndex e : arcs) {
    if (e < 0 || e >= g.num_arcs()) throw ContractViolation("arc index out of range");
    if (seen[e]) continue;
    seen[e] = 1;
    const Arc& a = g.arc(e);
    net[a.head] += a.amount;
    net[a.tail] -= a.amount;
    ++indeg[a.head];
    ++outdeg[a.tail];
  }
  FeasibilityVerdict verdict;
  for (NodeIndex u = 0; u < n; ++u) {
    if (indeg[u] == 0 && outdeg[u] == 0) continue;
    Money lo = g.lower_margin(u);
    if (net[u] < lo) verdict.violations.push_back({u, Side::kFloor, lo - net[u]});
    Cap hi = g.upper_margin(u);
    if (hi && net[u] > *hi) verdict.violations.push_back({u, Side::kCap, net[u] - *hi});
    if (indeg[u] == 0) verdict.violations.push_back({u, Side::kNoIncoming, 0});
    if (outdeg[u] == 0) verdict.violations.push_back({u, Side::kNoOutgoing, 0});
  }
  return verdict;
}

Money objective_value(const RMultigraph& g, std::span<const ArcIndex> arcs) {
  Money total = 0;
  for (ArcIndex e : arcs) total += g.arc(e).amount;
  return total;
}

std::vector<CustomerAccount> apply_settlement(std::vector<CustomerAccount> accounts,
                                              const RMultigraph& g,
                                              const Settlement& s) {
  if (!check_feasible(g, s).ok()) {
    throw ContractViolation("apply_settlement: settlement is infeasible");
  }
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < accounts.size(); ++i) pos.emplace(accounts[i].id, i);
  std::vector<Money> net = net_flows(g, s.arcs);
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    if (net[u] == 0) continue;
    auto it = pos.find(g.account(u).id);
    if (it == pos.end()) {
      throw ContractViolation("apply_settlement: unknown account '" + g.account(u).id + "'");
    }
    accounts[it->second].bl_r += net[u];
    accounts[it->second].bl_a += net[u];
  }
  return accounts;
}

}  // namespace netsettle
