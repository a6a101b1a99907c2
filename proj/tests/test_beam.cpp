#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/beam.hpp"
#include "netsettle/exact.hpp"
#include "oracles.hpp"

using namespace netsettle;
using fixtures::account;
using fixtures::arc;

namespace {

CustomerAccount loose(const std::string& id) { return account(id, 0, -1'000'000, kInfinite); }

RMultigraph triangle(Money a, Money b, Money c) {
  return RMultigraph({loose("u"), loose("v"), loose("w")},
                     {arc("a", "u", "v", a), arc("b", "v", "w", b), arc("c", "w", "u", c)});
}

// Naive reference: every pair whose union with the committed arcs stays
// within margins.
std::vector<std::pair<int, int>> naive_pairs(const RMultigraph& g, const std::vector<Cycle>& sel,
                                             const std::vector<ArcIndex>& committed) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(sel.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(sel.size()); ++j) {
      std::vector<ArcIndex> all = committed;
      all.insert(all.end(), sel[i].arcs.begin(), sel[i].arcs.end());
      all.insert(all.end(), sel[j].arcs.begin(), sel[j].arcs.end());
      if (oracle::within_margins(g, all)) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("beam") {
  TEST_CASE("cycle score") {
    RMultigraph g = triangle(10, 20, 30);
    Cycle c{{0, 1, 2}, 60};
    CHECK(cycle_score(g, c, std::vector<int>{1, 1, 1}) == 1);
    CHECK(cycle_score(g, c, std::vector<int>{1, 2, 3}) == 2);
    CHECK(cycle_score(g, c, std::vector<int>{2, 4, 6}) == 4);
    CHECK(cycle_score(g, c, std::vector<int>{3, 3, 3}) == 3);
    CHECK_THROWS_AS(cycle_score(g, c, std::vector<int>{0, 1, 1}), ContractViolation);
    CHECK(arc_frequencies(g, std::vector<Cycle>{c, c}) == std::vector<int>{2, 2, 2});
  }

  TEST_CASE("greedy max cover selection") {
    // arcs 0..4 of a throwaway graph; the selector only reads amounts
    RMultigraph g({loose("u"), loose("v")},
                  {arc("0", "u", "v", 50), arc("1", "v", "u", 50), arc("2", "u", "v", 25),
                   arc("3", "v", "u", 25), arc("4", "u", "v", 30)});
    std::vector<Cycle> disjoint{{{2, 3}, 50}, {{0, 1}, 100}};
    CHECK(beam_select(g, disjoint, 1) == std::vector<int>{1});
    CHECK(beam_select(g, disjoint, 5).size() == 2);
    CHECK_THROWS_AS(beam_select(g, disjoint, 0), ContractViolation);

    // A = {0 (50), 3 (25)} = 75, B = {3, 4 (30)} = 55, C = {2 (25), 1 (50)} = 75
    std::vector<Cycle> overlap{{{0, 3}, 75}, {{3, 4}, 55}, {{1, 2}, 75}};
    // after A, B only adds 30 and C adds 75
    CHECK(beam_select(g, overlap, 2) == std::vector<int>{0, 2});
    CHECK(beam_select(g, overlap, 3) == std::vector<int>{0, 2, 1});
  }

  TEST_CASE("pair admissibility") {
    // two disjoint 2-cycles through a shared-cap-free layout
    RMultigraph g({account("a", 0, -100, kInfinite), account("b", 0, -100, Money{5}),
                   account("c", 0, -100, kInfinite), account("d", 0, -100, kInfinite)},
                  {arc("1", "a", "b", 10), arc("2", "b", "a", 10), arc("3", "c", "d", 10),
                   arc("4", "d", "c", 10), arc("5", "a", "b", 20), arc("6", "b", "a", 5)});
    BudgetState empty(g);
    std::vector<Cycle> sel{{{0, 1}, 20}, {{2, 3}, 20}};
    CHECK(admissible_pairs(sel, empty) == std::vector<std::pair<int, int>>{{0, 1}});
    // {4,5} nets b +15 > 5: not admissible; paired with the disjoint c-d cycle it stays so
    std::vector<Cycle> bad{{{4, 5}, 25}, {{2, 3}, 20}};
    CHECK(admissible_pairs(bad, empty).empty());
    CHECK(admissible_pairs(std::vector<Cycle>{}, empty).empty());
  }

  TEST_CASE("budget state is idempotent") {
    RMultigraph g = triangle(10, 20, 30);
    BudgetState s(g);
    s.commit(std::vector<ArcIndex>{0, 1, 2});
    s.commit(std::vector<ArcIndex>{0, 1, 2});
    CHECK(s.total() == 60);
    CHECK(s.committed().size() == 3);
    CHECK(s.marginal(std::vector<ArcIndex>{0, 1}) == 0);
    CHECK(s.spent_cap(0) == -10 + 30);
    CHECK(s.spent_floor(0) == 10 - 30);
  }

  TEST_CASE("settlements") {
    RMultigraph tri = triangle(10, 20, 30);
    CHECK(settle_beam(tri).total == 60);

    RMultigraph two({account("a", 0, -100, kInfinite), account("b", 0, -100, Money{5}),
                     account("c", 0, -100, kInfinite)},
                    {arc("1", "a", "c", 10), arc("2", "c", "a", 10), arc("3", "a", "b", 20),
                     arc("4", "b", "a", 10)});
    Settlement s = settle_beam(two, {.k = 2});
    CHECK(s.arcs == std::vector<ArcIndex>{0, 1});

    RMultigraph fig = fixtures::worked_day1();
    Settlement f = settle_beam(fig);
    CHECK(f.total <= 5600);
    CHECK(f.total == 5600);
    CHECK(oracle::feasible(fig, f.arcs));
  }

  TEST_CASE("property: pruned pairs equal the naive filter") {
    std::mt19937_64 rng(31);
    int pairs_seen = 0;
    for (int round = 0; round < 200; ++round) {
      RMultigraph g = gen::graph(rng, {.max_nodes = 6, .max_arcs = 14, .max_slack = 80});
      CycleSet cs = enumerate_cycles(g, 6);
      std::vector<Cycle> sel;
      for (const Cycle& c : cs.cycles) {
        if (sel.size() < 12) sel.push_back(c);
      }
      BudgetState state(g);
      std::vector<ArcIndex> committed;
      if (!sel.empty() && gen::uniform(rng, 0, 1) && state.admits(sel.back().arcs)) {
        committed = sel.back().arcs;
        state.commit(committed);
      }
      auto mine = admissible_pairs(sel, state);
      auto naive = naive_pairs(g, sel, committed);
      CHECK(mine == naive);
      pairs_seen += static_cast<int>(naive.size());
    }
    CHECK(pairs_seen > 50);
  }

  TEST_CASE("property: beam output is feasible and never beats the optimum") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 200; ++round) {
      RMultigraph g = gen::graph(rng, {});
      Settlement s = settle_beam(g, {.k = static_cast<int>(gen::uniform(rng, 1, 6))});
      CHECK(oracle::feasible(g, s.arcs));
      CHECK(s.total <= brute_force_optimal(g).total);
    }
  }
}
