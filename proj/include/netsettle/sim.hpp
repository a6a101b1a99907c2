#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "netsettle/core.hpp"
#include "netsettle/solver.hpp"

namespace netsettle {

struct Scenario {
  char name = 'N';  // W, N or B
  int life_days = 10;
  int cap_multiplier = 2;
  bool infinite_cap = false;
};

// W: life 5, cap 1x; N: life 10, cap 2x; B: life 15, cap 3x.
Scenario make_scenario(char name, bool infinite_cap);

struct InitResult {
  std::vector<CustomerAccount> accounts;  // sorted by id
  bool defaulted = false;                 // no training receivables at all
};

// Derives starting accounts from a log of receivables whose indate falls in
// [first, last]. Caps are the base fcap; apply_scenario scales them.
InitResult init_attributes(const std::vector<Receivable>& training_log, Date first, Date last,
                           const std::vector<std::string>& customers);

inline constexpr Money kBalanceClamp = 5'000'000;  // 50K in minor units

std::vector<CustomerAccount> apply_scenario(std::vector<CustomerAccount> accounts,
                                            const Scenario& scenario);
std::vector<Receivable> apply_scenario(std::vector<Receivable> receivables,
                                       const Scenario& scenario);

struct DayRecord {
  Date day{};
  std::vector<std::string> arc_ids;
  std::vector<int> timestamps;  // parallel to arc_ids when ordered
  bool ordered = false;
  Money total = 0;
  double runtime_ms = 0;
  SolveFlags flags;
  std::string error;
};

struct SimState {
  Date day{};
  std::vector<CustomerAccount> accounts;
  std::vector<Receivable> pending;  // includes receivables not yet issued
  std::vector<Receivable> settled;
  std::vector<Receivable> expired;
  std::vector<DayRecord> ledger;
};

// Solves one evening, applies the settlement and expires receivables whose
// window ends today.
SimState step_day(SimState state, const SolverConfig& solver);

struct GeneratorConfig {
  int customers = 1000;
  int days = 120;
  int receivables_per_day = 100;
  Money amount_median = 100'000;  // log-normal location, minor units
  double amount_sigma = 1.0;
  double endpoint_exponent = 0.55;  // weight of customer i is (i + 1)^-exponent
  int due_min = 5;
  int due_max = 60;
  int life_days = 10;
  Money balance_median = 200'000;
  double balance_sigma = 1.0;
  int cap_multiplier = 3;  // cap = bl_r + multiplier * balance
  Date start = Date{std::chrono::year{2024} / 1 / 1};
};

struct SyntheticData {
  std::vector<CustomerAccount> accounts;
  std::vector<Receivable> receivables;
};

SyntheticData generate_synthetic(const GeneratorConfig& config, std::uint64_t seed);

struct RandomInstanceConfig {
  int min_nodes = 2;
  int max_nodes = 7;
  int min_arcs = 1;
  int max_arcs = 14;
  Money max_amount = 1000;
  Money max_balance = 1000;
};

// Small random graph for oracle comparisons; floors and caps are drawn so
// that roughly half of the margins bind.
RMultigraph random_instance(std::mt19937_64& rng, const RandomInstanceConfig& config);

}  // namespace netsettle
