#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/exact.hpp"
#include "netsettle/preprocess.hpp"
#include "oracles.hpp"

using namespace netsettle;
using fixtures::account;
using fixtures::arc;

namespace {

CustomerAccount loose(const std::string& id) { return account(id, 0, -1'000'000, kInfinite); }

}  // namespace

TEST_SUITE("preprocess") {
  TEST_CASE("core peeling") {
    RMultigraph single({loose("u"), loose("v")}, {arc("a", "u", "v", 5)});
    CHECK(d_core_11(single).empty());

    RMultigraph tri({loose("u"), loose("v"), loose("w")},
                    {arc("a", "u", "v", 5), arc("b", "v", "w", 5), arc("c", "w", "u", 5)});
    CHECK(d_core_11(tri) == std::vector<ArcIndex>{0, 1, 2});

    RMultigraph pendant({loose("u"), loose("v"), loose("w"), loose("x")},
                        {arc("a", "u", "v", 5), arc("b", "v", "w", 5), arc("c", "w", "u", 5),
                         arc("d", "w", "x", 5)});
    CHECK(d_core_11(pendant) == std::vector<ArcIndex>{0, 1, 2});
  }

  TEST_CASE("balance bounds") {
    // u: in 100, out 40, cap margin 50 -> net at least 60
    RMultigraph capped({account("u", 0, -1000, Money{50}), loose("v")},
                       {arc("in", "v", "u", 100), arc("out", "u", "v", 40)});
    CHECK(balance_bound_filter(capped) == std::vector<NodeIndex>{0});

    RMultigraph open({account("u", 0, -1000, kInfinite), loose("v")},
                     {arc("in", "v", "u", 100), arc("out", "u", "v", 40)});
    CHECK(balance_bound_filter(open).empty());

    // u: in 10, out 200, floor margin -50 -> net at most -190
    RMultigraph floored({account("u", 0, -50, kInfinite), loose("v")},
                        {arc("in", "v", "u", 10), arc("out", "u", "v", 200)});
    CHECK(balance_bound_filter(floored) == std::vector<NodeIndex>{0});
    CHECK(preprocess(floored).empty());
  }

  TEST_CASE("a bound met with equality keeps the node") {
    // The only settlement nets u exactly at its cap margin.
    RMultigraph g({account("u", 0, -1000, Money{60}), loose("v")},
                  {arc("in", "v", "u", 100), arc("out", "u", "v", 40)});
    CHECK(balance_bound_filter(g).empty());
    CHECK(brute_force_optimal(g).total == 140);
  }

  TEST_CASE("components") {
    RMultigraph two({loose("a"), loose("b"), loose("c"), loose("d")},
                    {arc("1", "a", "b", 1), arc("2", "b", "a", 1), arc("3", "c", "d", 1),
                     arc("4", "d", "c", 1)});
    auto split = split_components(two);
    REQUIRE(split.components.size() == 2);
    CHECK(split.components[0] == std::vector<ArcIndex>{0, 1});
    CHECK(split.components[1] == std::vector<ArcIndex>{2, 3});
    CHECK(split_components(RMultigraph{}).components.empty());
    CHECK(split_components(fixtures::worked_day1()).components.size() == 1);
    CHECK(split_components(fixtures::worked_day1()).components[0].size() == 9);
  }

  TEST_CASE("property: preprocessing never cuts a feasible settlement") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 150; ++round) {
      RMultigraph g = gen::graph(rng, {.max_nodes = 6, .max_arcs = 11});
      std::vector<ArcIndex> kept = preprocess(g);
      std::vector<char> in(g.num_arcs(), 0);
      for (ArcIndex e : kept) in[e] = 1;
      // every feasible subset, exhaustively
      for (std::uint32_t mask = 1; mask < (1u << g.num_arcs()); ++mask) {
        std::vector<ArcIndex> subset;
        for (int e = 0; e < g.num_arcs(); ++e) {
          if (mask >> e & 1) subset.push_back(e);
        }
        if (!oracle::feasible(g, subset)) continue;
        for (ArcIndex e : subset) REQUIRE(in[e]);
      }
      // idempotent core, partition by components
      std::vector<ArcIndex> core = d_core_11(g);
      CHECK(d_core_11(g, core) == core);
      std::vector<ArcIndex> joined;
      for (const auto& c : split_components(g, kept).components) {
        joined.insert(joined.end(), c.begin(), c.end());
      }
      std::sort(joined.begin(), joined.end());
      CHECK(joined == kept);
    }
  }
}
