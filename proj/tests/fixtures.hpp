#pragma once

#include <string>
#include <vector>

#include "netsettle/core.hpp"

namespace fixtures {

inline netsettle::Date day(int d) {
  return netsettle::parse_date("2024-01-01") + std::chrono::days{d - 1};
}

inline netsettle::CustomerAccount account(std::string id, netsettle::Money balance,
                                          netsettle::Money floor, netsettle::Cap cap) {
  return {std::move(id), balance, balance, cap, floor};
}

inline netsettle::Receivable arc(std::string id, std::string debtor, std::string creditor,
                                 netsettle::Money amount) {
  return {std::move(id), std::move(debtor), std::move(creditor), amount, day(1), day(30), 30};
}

// Five-customer worked example, first day.
inline netsettle::RMultigraph worked_day1() {
  std::vector<netsettle::CustomerAccount> accounts{
      account("A", 1000, -1000, 3000), account("B", 0, -500, 4000),
      account("C", 100, 0, 1500), account("D", 100, -500, 3000),
      account("E", 0, -200, 600)};
  std::vector<netsettle::Receivable> arcs{
      arc("r1", "D", "A", 2600), arc("r2", "D", "E", 1600), arc("r3", "A", "B", 700),
      arc("r4", "A", "B", 600),  arc("r5", "E", "A", 1000), arc("r6", "B", "D", 700),
      arc("r7", "B", "D", 1000), arc("r8", "C", "B", 1100), arc("r9", "E", "C", 900)};
  return netsettle::RMultigraph(accounts, arcs);
}

inline std::vector<std::string> worked_day1_optimum() {
  return {"r2", "r3", "r4", "r5", "r6", "r7"};
}

// Second day: leftovers plus two new receivables, balances after day one.
inline netsettle::RMultigraph worked_day2() {
  std::vector<netsettle::CustomerAccount> accounts{
      account("A", 700, -1000, 3000), account("B", -400, -500, 4000),
      account("C", 100, 0, 1500), account("D", 200, -500, 3000),
      account("E", 600, -200, 600)};
  std::vector<netsettle::Receivable> arcs{
      arc("r9", "E", "C", 900), arc("r8", "C", "B", 1100), arc("r1", "D", "A", 2600),
      arc("r10", "A", "E", 1000), arc("r11", "C", "A", 50)};
  return netsettle::RMultigraph(accounts, arcs);
}

}  // namespace fixtures
