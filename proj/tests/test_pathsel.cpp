#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/exact.hpp"
#include "netsettle/pathsel.hpp"
#include "oracles.hpp"

using namespace netsettle;
using fixtures::account;
using fixtures::arc;

namespace {

CustomerAccount loose(const std::string& id) { return account(id, 0, -1'000, kInfinite); }

// Two 2-cycles a<->b and c<->d, plus a bridge a -> x -> c.
RMultigraph bridged(Money into_x, Money out_of_x, Cap x_cap) {
  return RMultigraph({loose("a"), loose("b"), loose("c"), loose("d"), account("x", 0, -1000, x_cap)},
                     {arc("1", "a", "b", 10), arc("2", "b", "a", 10), arc("3", "c", "d", 10),
                      arc("4", "d", "c", 10), arc("5", "a", "x", into_x),
                      arc("6", "x", "c", out_of_x)});
}

PathOptions variant(PathVariant v) {
  PathOptions o;
  o.variant = v;
  return o;
}

}  // namespace

TEST_SUITE("pathsel") {
  TEST_CASE("no connecting path leaves the cycles alone") {
    RMultigraph g({loose("a"), loose("b"), loose("c"), loose("d")},
                  {arc("1", "a", "b", 10), arc("2", "b", "a", 10), arc("3", "c", "d", 10),
                   arc("4", "d", "c", 10)});
    for (PathVariant v : {PathVariant::kGreedy, PathVariant::kBeam}) {
      CHECK(settle_path(g, variant(v)).arcs == settle_beam(g).arcs);
    }
  }

  TEST_CASE("a fitting bridge is added") {
    RMultigraph g = bridged(5, 5, kInfinite);
    CHECK(settle_beam(g).total == 40);
    for (PathVariant v : {PathVariant::kGreedy, PathVariant::kBeam}) {
      Settlement s = settle_path(g, variant(v));
      CHECK(s.total == 50);
      CHECK(oracle::feasible(g, s.arcs));
    }
  }

  TEST_CASE("a bridge that overfills its interior node is refused") {
    RMultigraph g = bridged(8, 5, Money{2});
    for (PathVariant v : {PathVariant::kGreedy, PathVariant::kBeam}) {
      Settlement s = settle_path(g, variant(v));
      CHECK(s.total == 40);
      CHECK(s.arcs == settle_beam(g).arcs);
    }
    // the same bridge with room for the extra 3
    CHECK(settle_path(bridged(8, 5, Money{3})).total == 53);
  }

  TEST_CASE("worked example") {
    RMultigraph g = fixtures::worked_day1();
    for (PathVariant v : {PathVariant::kGreedy, PathVariant::kBeam}) {
      Settlement s = settle_path(g, variant(v));
      CHECK(s.total <= 5600);
      CHECK(oracle::feasible(g, s.arcs));
    }
  }

  TEST_CASE("property: paths only add to the cycle solution") {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 150; ++round) {
      RMultigraph g = gen::graph(rng, {.max_nodes = 8, .max_arcs = 16});
      Settlement beam = settle_beam(g);
      const Money best = g.num_arcs() <= 16 ? brute_force_optimal(g).total : 0;
      for (PathVariant v : {PathVariant::kGreedy, PathVariant::kBeam}) {
        Settlement s = settle_path(g, variant(v));
        CHECK(oracle::feasible(g, s.arcs));
        CHECK(std::includes(s.arcs.begin(), s.arcs.end(), beam.arcs.begin(), beam.arcs.end()));
        CHECK(s.total >= beam.total);
        CHECK(s.total <= best);
      }
    }
  }
}
