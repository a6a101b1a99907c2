#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/baseline.hpp"
#include "netsettle/exact.hpp"
#include "oracles.hpp"

using namespace netsettle;
using fixtures::account;
using fixtures::arc;

TEST_SUITE("baseline") {
  TEST_CASE("a feasible cycle is kept whole") {
    RMultigraph g({account("u", 0, -100, kInfinite), account("v", 0, -100, kInfinite),
                   account("w", 0, -100, kInfinite)},
                  {arc("a", "u", "v", 10), arc("b", "v", "w", 20), arc("c", "w", "u", 30)});
    CHECK(rfb(g).arcs == std::vector<ArcIndex>{0, 1, 2});
  }

  TEST_CASE("losing the smallest arc of a cycle empties it") {
    // w would gain 90 against a cap margin of 50; its smallest arc goes first
    RMultigraph g({account("u", 0, -1000, kInfinite), account("v", 0, -1000, kInfinite),
                   account("w", 0, -1000, Money{50})},
                  {arc("a", "u", "v", 100), arc("b", "v", "w", 100), arc("c", "w", "u", 10)});
    CHECK(rfb(g).arcs.empty());
  }

  TEST_CASE("worked example") {
    RMultigraph g = fixtures::worked_day1();
    Settlement s = rfb(g);
    CHECK(s.total <= 5600);
    CHECK(oracle::feasible(g, s.arcs));
  }

  TEST_CASE("property: feasible and dominated by the optimum") {
    std::mt19937_64 rng(91);
    for (int round = 0; round < 200; ++round) {
      RMultigraph g = gen::graph(rng, {});
      Settlement s = rfb(g);
      CHECK(oracle::feasible(g, s.arcs));
      CHECK(s.total <= brute_force_optimal(g).total);
    }
  }
}
