// Command-line front end: solve, simulate, verify, generate.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "netsettle/exact.hpp"
#include "netsettle/flow.hpp"
#include "netsettle/io.hpp"
#include "netsettle/sim.hpp"
#include "netsettle/solver.hpp"

namespace {

using namespace netsettle;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kBudget = 3, kVerify = 4 };

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::string algo = "h";
  std::string path_variant = "greedy";
  SolverConfig config;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--algo", f.algo,
                  "bb|bb-lb|beam|path-g|path-s|h|h-path|rfb|redefine-floors|select-and-order");
  cmd->add_option("--L", f.config.max_len, "maximum cycle length")->check(CLI::Range(2, 1000));
  cmd->add_option("--Lp", f.config.max_path_len, "maximum path length")->check(CLI::Range(1, 1000));
  cmd->add_option("--H", f.config.h, "largest component solved exactly")->check(CLI::NonNegativeNumber);
  cmd->add_option("--K", f.config.k, "cycle beam width")->check(CLI::PositiveNumber);
  cmd->add_option("--Kp", f.config.k_p, "path beam width")->check(CLI::PositiveNumber);
  cmd->add_option("--path-variant", f.path_variant, "greedy|beam, path step of h-path")
      ->check(CLI::IsMember({"greedy", "beam"}));
  cmd->add_option("--budget-nodes", f.config.node_budget, "branch-and-bound node budget");
  cmd->add_option("--budget-cycles", f.config.cycle_budget, "cycle enumeration budget");
}

SolverConfig resolve(const SolverFlags& f) {
  SolverConfig c = f.config;
  auto algo = parse_algorithm(f.algo);
  if (!algo) throw UsageError("unknown algorithm '" + f.algo + "'");
  c.algo = *algo;
  c.path_variant = f.path_variant == "beam" ? PathVariant::kBeam : PathVariant::kGreedy;
  return c;
}

json parameters(const SolverConfig& c) {
  return {{"L", c.max_len},
          {"Lp", c.max_path_len},
          {"H", c.h},
          {"K", c.k},
          {"Kp", c.k_p},
          {"path_variant", c.path_variant == PathVariant::kBeam ? "beam" : "greedy"},
          {"budget_nodes", c.node_budget},
          {"budget_cycles", c.cycle_budget}};
}

json day_json(const DayRecord& d, const SolverConfig& c, bool timing) {
  json j{{"date", format_date(d.day)},
         {"algorithm", algorithm_name(c.algo)},
         {"parameters", parameters(c)},
         {"arc_ids", d.arc_ids},
         {"total_minor", d.total},
         {"truncation", {{"cycles", d.flags.cycles_truncated}, {"paths", d.flags.paths_truncated}}},
         {"exact_fallbacks", d.flags.exact_fallbacks},
         {"cap_overshoot", d.flags.cap_overshoot}};
  if (d.ordered) j["timestamps"] = d.timestamps;
  if (timing) j["runtime_ms"] = d.runtime_ms;
  if (!d.error.empty()) j["error"] = d.error;
  return j;
}

void emit(const json& report, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report.dump(2) << '\n';
}

Date earliest(const std::vector<Receivable>& receivables) {
  if (receivables.empty()) throw UsageError("no receivables; pass --date");
  Date d = receivables.front().indate;
  for (const Receivable& r : receivables) d = std::min(d, r.indate);
  return d;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string input, receivables, accounts, date, instance, output;
  bool omit_timing = false;
  SolverFlags solver;
};

int run_solve(const SolveArgs& a) {
  SolverConfig config = resolve(a.solver);
  std::vector<Instance> instances;
  if (!a.input.empty()) {
    instances = read_instances_json(a.input);
    if (!a.instance.empty()) {
      std::erase_if(instances, [&](const Instance& i) { return i.name != a.instance; });
      if (instances.empty()) throw UsageError("no instance named '" + a.instance + "'");
    }
  } else {
    if (a.receivables.empty() || a.accounts.empty()) {
      throw UsageError("solve needs --input or both --receivables and --accounts");
    }
    instances.push_back({"", std::nullopt, read_accounts_csv(a.accounts),
                         read_receivables_csv(a.receivables)});
  }

  json days = json::array();
  bool verified = true;
  for (Instance& inst : instances) {
    Date today = !a.date.empty() ? parse_date(a.date)
                 : inst.today    ? *inst.today
                                 : earliest(inst.receivables);
    RMultigraph g;
    try {
      g = build_graph(inst.accounts, inst.receivables, today);
    } catch (const IngestionError& e) {
      throw ParseError(a.input.empty() ? a.receivables : a.input, 0, e.what());
    }
    DayRecord record;
    record.day = today;
    auto start = std::chrono::steady_clock::now();
    SolveOutcome outcome = run_solver(g, config);
    record.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    record.total = outcome.settlement.total;
    record.flags = outcome.settlement.flags;
    record.ordered = outcome.ordered;
    if (outcome.ordered) {
      for (const TimedArc& t : outcome.order) {
        record.arc_ids.push_back(g.receivable(t.arc).id);
        record.timestamps.push_back(t.ts);
      }
    } else {
      record.arc_ids = arc_ids(g, outcome.settlement);
    }
    json day = day_json(record, config, !a.omit_timing);
    if (!inst.name.empty()) day["instance"] = inst.name;
    FeasibilityVerdict verdict = check_feasible(g, outcome.settlement);
    day["feasible"] = verdict.ok();
    verified = verified && verdict.ok();
    days.push_back(std::move(day));
  }
  emit({{"command", "solve"}, {"days", days}}, a.output);
  return verified ? kOk : kVerify;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string receivables, accounts, scenario = "N", cap = "finite", output;
  int days = 90, training_days = 30, customers = 1000, per_day = 100;
  double exponent = GeneratorConfig{}.endpoint_exponent;
  std::uint64_t seed = 1;
  bool omit_timing = false;
  SolverFlags solver;
};

int run_simulate(const SimulateArgs& a) {
  SolverConfig config = resolve(a.solver);
  Scenario scenario = make_scenario(a.scenario.at(0), a.cap == "infinite");

  std::vector<Receivable> log;
  std::vector<CustomerAccount> given;
  Date start{};
  if (!a.receivables.empty()) {
    log = read_receivables_csv(a.receivables);
    if (!a.accounts.empty()) given = read_accounts_csv(a.accounts);
    start = earliest(log);
  } else {
    GeneratorConfig gen;
    gen.customers = a.customers;
    gen.days = a.training_days + a.days;
    gen.receivables_per_day = a.per_day;
    gen.endpoint_exponent = a.exponent;
    SyntheticData data = generate_synthetic(gen, a.seed);
    log = std::move(data.receivables);
    start = gen.start;
  }
  const Date sim_start = start + std::chrono::days{a.training_days};
  const Date sim_end = sim_start + std::chrono::days{a.days - 1};

  std::set<std::string> ids;
  for (const Receivable& r : log) {
    ids.insert(r.debtor);
    ids.insert(r.creditor);
  }
  SimState state;
  bool defaulted = false;
  if (!given.empty()) {
    state.accounts = given;
  } else {
    InitResult init = a.training_days > 0
                          ? init_attributes(log, start, sim_start - std::chrono::days{1},
                                            {ids.begin(), ids.end()})
                          : InitResult{};
    if (a.training_days <= 0) {
      for (const std::string& id : ids) init.accounts.push_back({id, 0, 0, Money{0}, 0});
      init.defaulted = true;
    }
    defaulted = init.defaulted;
    state.accounts = apply_scenario(std::move(init.accounts), scenario);
  }
  for (const Receivable& r : log) {
    if (r.indate >= sim_start && r.indate <= sim_end) state.pending.push_back(r);
  }
  state.pending = apply_scenario(std::move(state.pending), scenario);
  state.day = sim_start;

  auto balance_sum = [](const std::vector<CustomerAccount>& accounts) {
    Money s = 0;
    for (const CustomerAccount& c : accounts) s += c.bl_a;
    return s;
  };
  const Money initial = balance_sum(state.accounts);
  for (int d = 0; d < a.days; ++d) state = step_day(std::move(state), config);

  json days = json::array();
  Money settled_total = 0;
  for (const DayRecord& r : state.ledger) {
    days.push_back(day_json(r, config, !a.omit_timing));
    settled_total += r.total;
  }
  json summary{{"scenario", std::string(1, scenario.name)},
               {"cap", scenario.infinite_cap ? "infinite" : "finite"},
               {"first_day", format_date(sim_start)},
               {"days", a.days},
               {"settled_count", state.settled.size()},
               {"settled_total_minor", settled_total},
               {"expired_count", state.expired.size()},
               {"pending_count", state.pending.size()},
               {"balance_sum_start_minor", initial},
               {"balance_sum_end_minor", balance_sum(state.accounts)},
               {"default_attributes", defaulted}};
  emit({{"command", "simulate"}, {"summary", summary}, {"days", days}}, a.output);
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  int max_arcs = 14, max_nodes = 7, instances = 200;
  std::uint64_t seed = 1;
  std::string output;
};

int run_verify(const VerifyArgs& a) {
  if (a.max_arcs > kBruteForceMaxArcs) {
    throw UsageError("--max-arcs is limited to " + std::to_string(kBruteForceMaxArcs));
  }
  std::mt19937_64 rng(a.seed);
  RandomInstanceConfig cfg;
  cfg.max_arcs = a.max_arcs;
  cfg.max_nodes = a.max_nodes;
  int mismatches = 0;
  json failures = json::array();
  for (int i = 0; i < a.instances; ++i) {
    RMultigraph g = random_instance(rng, cfg);
    Settlement exact = settle_bb(g);
    Settlement oracle = brute_force_optimal(g);
    std::optional<Money> ub = settlement_upper_bound(g, {}, {});
    Settlement lb = settle_bb_lb(g, {}, {}, kDefaultMaxLen, kDefaultCycleBudget);
    bool ok = exact.total == oracle.total && check_feasible(g, exact).ok() && ub &&
              lb.total <= oracle.total && oracle.total <= *ub;
    if (!ok) {
      ++mismatches;
      failures.push_back({{"instance", i}, {"bb", exact.total}, {"oracle", oracle.total}});
    }
  }
  emit({{"command", "verify"},
        {"instances", a.instances},
        {"seed", a.seed},
        {"mismatches", mismatches},
        {"failures", failures}},
       a.output);
  return mismatches == 0 ? kOk : kVerify;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  GeneratorConfig config;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int run_generate(const GenerateArgs& a) {
  SyntheticData data = generate_synthetic(a.config, a.seed);
  write_receivables_csv(a.out_dir + "/receivables.csv", data.receivables);
  write_accounts_csv(a.out_dir + "/accounts.csv", data.accounts);
  std::cout << data.receivables.size() << " receivables, " << data.accounts.size()
            << " accounts written to " << a.out_dir << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Receivable settlement optimizer"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "settle one day's receivables");
  s->add_option("--input", solve.input, "JSON instance file");
  s->add_option("--instance", solve.instance, "instance name inside --input");
  s->add_option("--receivables", solve.receivables, "receivables CSV");
  s->add_option("--accounts", solve.accounts, "accounts CSV");
  s->add_option("--date", solve.date, "settlement day, YYYY-MM-DD");
  s->add_option("--output,-o", solve.output, "report path (default stdout)");
  s->add_flag("--omit-timing", solve.omit_timing, "leave runtime_ms out of the report");
  add_solver_flags(s, solve.solver);

  SimulateArgs sim;
  CLI::App* m = app.add_subcommand("simulate", "run the daily settlement loop");
  m->add_option("--receivables", sim.receivables, "receivables CSV (default: synthetic)");
  m->add_option("--accounts", sim.accounts, "accounts CSV used as-is instead of derived ones");
  m->add_option("--scenario", sim.scenario)->check(CLI::IsMember({"W", "N", "B"}));
  m->add_option("--cap", sim.cap)->check(CLI::IsMember({"finite", "infinite"}));
  m->add_option("--days", sim.days, "simulated days")->check(CLI::PositiveNumber);
  m->add_option("--training-days", sim.training_days, "days used to derive accounts")
      ->check(CLI::NonNegativeNumber);
  m->add_option("--seed", sim.seed, "synthetic data seed");
  m->add_option("--customers", sim.customers, "synthetic customers")->check(CLI::Range(2, 10'000'000));
  m->add_option("--per-day", sim.per_day, "synthetic receivables per day")->check(CLI::NonNegativeNumber);
  m->add_option("--exponent", sim.exponent, "synthetic endpoint skew");
  m->add_option("--output,-o", sim.output, "report path (default stdout)");
  m->add_flag("--omit-timing", sim.omit_timing, "leave runtime_ms out of the report");
  add_solver_flags(m, sim.solver);

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "compare branch and bound with exhaustive search");
  v->add_option("--max-arcs", verify.max_arcs)->check(CLI::Range(1, 64));
  v->add_option("--max-nodes", verify.max_nodes)->check(CLI::Range(2, 64));
  v->add_option("--instances", verify.instances)->check(CLI::NonNegativeNumber);
  v->add_option("--seed", verify.seed);
  v->add_option("--output,-o", verify.output, "report path (default stdout)");

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "write a synthetic data set as CSV");
  g->add_option("--seed", gen.seed);
  g->add_option("--customers", gen.config.customers)->check(CLI::Range(2, 10'000'000));
  g->add_option("--days", gen.config.days)->check(CLI::PositiveNumber);
  g->add_option("--per-day", gen.config.receivables_per_day)->check(CLI::NonNegativeNumber);
  g->add_option("--exponent", gen.config.endpoint_exponent, "endpoint skew");
  g->add_option("--amount-median", gen.config.amount_median, "minor units")->check(CLI::PositiveNumber);
  g->add_option("--sigma", gen.config.amount_sigma, "log-normal spread")->check(CLI::NonNegativeNumber);
  g->add_option("--life", gen.config.life_days)->check(CLI::NonNegativeNumber);
  g->add_option("--out-dir", gen.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return run_solve(solve);
    if (*m) return run_simulate(sim);
    if (*v) return run_verify(verify);
    if (*g) return run_generate(gen);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const IngestionError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
