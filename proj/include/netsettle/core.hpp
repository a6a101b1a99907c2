#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace netsettle {

// Amounts are integer minor currency units.
using Money = std::int64_t;
using NodeIndex = std::int32_t;
using ArcIndex = std::int32_t;

// An upper limit that may be unbounded. std::nullopt means INFINITE.
using Cap = std::optional<Money>;
inline constexpr std::nullopt_t kInfinite = std::nullopt;

using Date = std::chrono::sys_days;

// Parses YYYY-MM-DD. Throws std::invalid_argument on malformed input.
Date parse_date(std::string_view iso);
std::string format_date(Date d);

// Converts a decimal amount with at most two fraction digits to minor
// units ("12.3" -> 1230). Throws std::invalid_argument otherwise.
Money parse_decimal_money(std::string_view text);

class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CustomerAccount {
  std::string id;
  Money bl_r = 0;
  Money bl_a = 0;
  Cap cap = kInfinite;
  Money floor = 0;
};

struct Receivable {
  std::string id;
  std::string debtor;
  std::string creditor;
  Money amount = 0;
  Date indate{};
  Date duedate{};
  int life = 0;
};

// Last day on which the receivable can be settled.
Date window_end(const Receivable& r);
bool is_valid_on(const Receivable& r, Date today);

struct Arc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  Money amount = 0;
};

// Directed multigraph of receivables. Nodes are sorted by account id and
// arcs by receivable id, so index order doubles as id order for every
// tie-break in the solvers.
class RMultigraph {
 public:
  RMultigraph() = default;
  RMultigraph(std::vector<CustomerAccount> accounts,
              std::vector<Receivable> receivables);

  int num_nodes() const { return static_cast<int>(accounts_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const CustomerAccount& account(NodeIndex u) const { return accounts_[u]; }
  const std::vector<CustomerAccount>& accounts() const { return accounts_; }
  const Receivable& receivable(ArcIndex e) const { return receivables_[e]; }
  const Arc& arc(ArcIndex e) const { return arcs_[e]; }
  std::span<const ArcIndex> out_arcs(NodeIndex u) const;
  std::span<const ArcIndex> in_arcs(NodeIndex u) const;

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<ArcIndex> find_arc(std::string_view id) const;

  // Allowed range of net inflow for a spanned node: [floor - bl_a, cap - bl_r].
  Money lower_margin(NodeIndex u) const;
  Cap upper_margin(NodeIndex u) const;
  bool within_margins(NodeIndex u, Money net) const;

  // Index of arc e in the graph this one was cut from (identity for roots).
  ArcIndex parent_arc(ArcIndex e) const { return parent_arc_[e]; }

  // Graph on the given arcs and the accounts they touch.
  RMultigraph subgraph(std::span<const ArcIndex> arcs) const;
  // Same arcs with replacement account attributes, matched by position.
  RMultigraph with_accounts(std::vector<CustomerAccount> accounts) const;

 private:
  void index();

  std::vector<CustomerAccount> accounts_;
  std::vector<Receivable> receivables_;
  std::vector<Arc> arcs_;
  std::vector<ArcIndex> parent_arc_;
  std::vector<ArcIndex> out_start_, out_list_;
  std::vector<ArcIndex> in_start_, in_list_;
  std::unordered_map<std::string, NodeIndex> node_by_id_;
  std::unordered_map<std::string, ArcIndex> arc_by_id_;
};

// Keeps the receivables valid on `today`. Checks account invariants.
RMultigraph build_graph(std::vector<CustomerAccount> accounts,
                        const std::vector<Receivable>& receivables, Date today);

// Diagnostics attached to solver output.
struct SolveFlags {
  bool cycles_truncated = false;
  bool paths_truncated = false;
  int exact_fallbacks = 0;
  bool cap_overshoot = false;

  void merge(const SolveFlags& other);
};

struct Settlement {
  std::vector<ArcIndex> arcs;  // ascending, no duplicates
  Money total = 0;
  SolveFlags flags;
};

Settlement make_settlement(const RMultigraph& g, std::vector<ArcIndex> arcs);
std::vector<std::string> arc_ids(const RMultigraph& g, const Settlement& s);

enum class Side { kFloor, kCap, kNoIncoming, kNoOutgoing };
const char* to_string(Side side);

struct Violation {
  NodeIndex node = 0;
  Side side = Side::kFloor;
  Money margin = 0;  // amount by which the bound is exceeded; 0 for degree
};

struct FeasibilityVerdict {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Net inflow per node for the given arc set.
std::vector<Money> net_flows(const RMultigraph& g, std::span<const ArcIndex> arcs);

FeasibilityVerdict check_feasible(const RMultigraph& g,
                                  std::span<const ArcIndex> arcs);
inline FeasibilityVerdict check_feasible(const RMultigraph& g,
                                         const Settlement& s) {
  return check_feasible(g, s.arcs);
}

Money objective_value(const RMultigraph& g, std::span<const ArcIndex> arcs);

// Accounts are matched by id; accounts outside the graph are untouched.
std::vector<CustomerAccount> apply_settlement(std::vector<CustomerAccount> accounts,
                                              const RMultigraph& g,
                                              const Settlement& s);

}  // namespace netsettle
