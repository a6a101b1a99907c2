#include "netsettle/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace netsettle {

Scenario make_scenario(char name, bool infinite_cap) {
  switch (name) {
    case 'W':
      return {'W', 5, 1, infinite_cap};
    case 'N':
      return {'N', 10, 2, infinite_cap};
    case 'B':
      return {'B', 15, 3, infinite_cap};
    default:
      throw ContractViolation(std::string("unknown scenario '") + name + "'");
  }
}

InitResult init_attributes(const std::vector<Receivable>& training_log, Date first, Date last,
                           const std::vector<std::string>& customers) {
  if (last < first) throw ContractViolation("init_attributes: empty training range");
  const Money days = (last - first).count() + 1;

  struct Daily {
    Money passive = 0;
    Money active = 0;
  };
  std::set<std::string> ids(customers.begin(), customers.end());
  std::map<std::string, std::map<Date, Daily>> flows;
  bool any = false;
  for (const Receivable& r : training_log) {
    if (r.indate < first || r.indate > last) continue;
    any = true;
    ids.insert(r.debtor);
    ids.insert(r.creditor);
    flows[r.debtor][r.indate].passive += r.amount;
    flows[r.creditor][r.indate].active += r.amount;
  }

  InitResult out;
  out.defaulted = !any;
  std::map<std::string, Money> fcap;
  Money fcap_sum = 0, with_inflow = 0;
  for (const std::string& id : ids) {
    Money inflow = 0;
    for (const auto& [day, d] : flows[id]) inflow += d.active;
    if (inflow > 0) {
      fcap[id] = inflow / days;
      fcap_sum += fcap[id];
      ++with_inflow;
    }
  }
  const Money fallback = with_inflow > 0 ? fcap_sum / with_inflow : 0;

  for (const std::string& id : ids) {
    Money shortfall = 0, count = 0;
    for (const auto& [day, d] : flows[id]) {
      if (d.active < d.passive) {
        shortfall += d.passive - d.active;
        ++count;
      }
    }
    CustomerAccount a;
    a.id = id;
    a.bl_a = count > 0 ? std::min(shortfall / count, kBalanceClamp) : 0;
    a.bl_r = 0;
    a.floor = 0;
    auto it = fcap.find(id);
    a.cap = it != fcap.end() ? it->second : fallback;
    out.accounts.push_back(std::move(a));
  }
  return out;
}

std::vector<CustomerAccount> apply_scenario(std::vector<CustomerAccount> accounts,
                                            const Scenario& scenario) {
  for (CustomerAccount& a : accounts) {
    if (scenario.infinite_cap || !a.cap) {
      a.cap = kInfinite;
    } else {
      a.cap = *a.cap * scenario.cap_multiplier;
    }
  }
  return accounts;
}

std::vector<Receivable> apply_scenario(std::vector<Receivable> receivables,
                                       const Scenario& scenario) {
  for (Receivable& r : receivables) r.life = scenario.life_days;
  return receivables;
}

SimState step_day(SimState state, const SolverConfig& solver) {
  const Date today = state.day;
  DayRecord record;
  record.day = today;
  std::vector<Receivable> valid;
  for (const Receivable& r : state.pending) {
    if (is_valid_on(r, today)) valid.push_back(r);
  }

  std::unordered_set<std::string> paid;
  if (!valid.empty()) {
    try {
      RMultigraph g = build_graph(state.accounts, valid, today);
      auto start = std::chrono::steady_clock::now();
      SolveOutcome outcome = run_solver(g, solver);
      record.runtime_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      state.accounts = apply_settlement(state.accounts, g, outcome.settlement);
      record.flags = outcome.settlement.flags;
      record.total = outcome.settlement.total;
      record.ordered = outcome.ordered;
      if (outcome.ordered) {
        for (const TimedArc& t : outcome.order) {
          record.arc_ids.push_back(g.receivable(t.arc).id);
          record.timestamps.push_back(t.ts);
        }
      } else {
        record.arc_ids = arc_ids(g, outcome.settlement);
      }
      paid.insert(record.arc_ids.begin(), record.arc_ids.end());
    } catch (const std::exception& e) {
      record.error = e.what();
    }
  }

  std::vector<Receivable> still;
  for (Receivable& r : state.pending) {
    if (paid.count(r.id)) {
      state.settled.push_back(std::move(r));
    } else if (window_end(r) <= today) {
      state.expired.push_back(std::move(r));
    } else {
      still.push_back(std::move(r));
    }
  }
  state.pending = std::move(still);
  state.ledger.push_back(std::move(record));
  state.day = today + std::chrono::days{1};
  return state;
}

namespace {

std::string padded(char prefix, long long value, int width) {
  std::string digits_text = std::to_string(value);
  if (static_cast<int>(digits_text.size()) < width) {
    digits_text.insert(0, width - digits_text.size(), '0');
  }
  return prefix + digits_text;
}

int digits(long long n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

Money lognormal(std::mt19937_64& rng, Money median, double sigma) {
  std::normal_distribution<double> z(0.0, 1.0);
  double draw = sigma == 0.0 ? static_cast<double>(median)
                             : static_cast<double>(median) * std::exp(sigma * z(rng));
  return std::max<Money>(1, std::llround(draw));
}

}  // namespace

SyntheticData generate_synthetic(const GeneratorConfig& c, std::uint64_t seed) {
  if (c.customers < 2) throw ContractViolation("generate_synthetic: need at least two customers");
  if (c.days < 1 || c.receivables_per_day < 0) {
    throw ContractViolation("generate_synthetic: counts must be positive");
  }
  if (c.due_min < 0 || c.due_max < c.due_min || c.life_days < 0) {
    throw ContractViolation("generate_synthetic: bad date offsets");
  }
  if (c.amount_median < 1 || c.balance_median < 0) {
    throw ContractViolation("generate_synthetic: bad amount location");
  }
  std::mt19937_64 rng(seed);
  SyntheticData out;
  const int width = digits(c.customers);
  for (int i = 0; i < c.customers; ++i) {
    CustomerAccount a;
    a.id = padded('c', i + 1, width);
    a.bl_r = 0;
    a.bl_a = c.balance_median == 0 ? 0 : lognormal(rng, c.balance_median, c.balance_sigma);
    a.floor = 0;
    a.cap = c.cap_multiplier > 0 ? Cap(a.bl_a * c.cap_multiplier) : kInfinite;
    out.accounts.push_back(std::move(a));
  }

  std::vector<double> weight(c.customers);
  for (int i = 0; i < c.customers; ++i) weight[i] = std::pow(i + 1.0, -c.endpoint_exponent);
  std::discrete_distribution<int> pick(weight.begin(), weight.end());
  std::uniform_int_distribution<int> due(c.due_min, c.due_max);

  const long long total = static_cast<long long>(c.days) * c.receivables_per_day;
  const int rwidth = digits(std::max(total, 1LL));
  long long serial = 0;
  for (int d = 0; d < c.days; ++d) {
    for (int j = 0; j < c.receivables_per_day; ++j) {
      int debtor = pick(rng);
      int creditor = pick(rng);
      while (creditor == debtor) creditor = pick(rng);
      Receivable r;
      r.id = padded('r', ++serial, rwidth);
      r.debtor = out.accounts[debtor].id;
      r.creditor = out.accounts[creditor].id;
      r.amount = lognormal(rng, c.amount_median, c.amount_sigma);
      r.indate = c.start + std::chrono::days{d};
      r.duedate = r.indate + std::chrono::days{due(rng)};
      r.life = c.life_days;
      out.receivables.push_back(std::move(r));
    }
  }
  return out;
}

RMultigraph random_instance(std::mt19937_64& rng, const RandomInstanceConfig& c) {
  auto uniform = [&](Money lo, Money hi) {
    return std::uniform_int_distribution<Money>(lo, hi)(rng);
  };
  const int n = static_cast<int>(uniform(std::max(2, c.min_nodes), c.max_nodes));
  const int m = static_cast<int>(uniform(c.min_arcs, c.max_arcs));
  std::vector<CustomerAccount> accounts;
  for (int i = 0; i < n; ++i) {
    CustomerAccount a;
    a.id = padded('n', i, digits(n));
    a.bl_a = uniform(0, c.max_balance);
    a.bl_r = uniform(-c.max_balance, c.max_balance);
    a.floor = a.bl_a - uniform(0, c.max_balance);
    if (uniform(0, 3) > 0) a.cap = a.bl_r + uniform(0, c.max_balance);
    accounts.push_back(std::move(a));
  }
  const Date start{std::chrono::year{2024} / 1 / 1};
  std::vector<Receivable> receivables;
  for (int e = 0; e < m; ++e) {
    Receivable r;
    r.id = padded('e', e, digits(m));
    int tail = static_cast<int>(uniform(0, n - 1));
    int head = static_cast<int>(uniform(0, n - 2));
    if (head >= tail) ++head;
    r.debtor = accounts[tail].id;
    r.creditor = accounts[head].id;
    r.amount = uniform(1, c.max_amount);
    r.indate = start;
    r.duedate = start + std::chrono::days{30};
    r.life = 30;
    receivables.push_back(std::move(r));
  }
  return RMultigraph(std::move(accounts), std::move(receivables));
}

}  // namespace netsettle
