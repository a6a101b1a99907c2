#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/enumerate.hpp"
#include "oracles.hpp"

using namespace netsettle;
using fixtures::account;
using fixtures::arc;

namespace {

CustomerAccount loose(const std::string& id) { return account(id, 0, -1'000'000, kInfinite); }

std::vector<std::string> ids(const RMultigraph& g, const std::vector<ArcIndex>& arcs) {
  std::vector<std::string> out;
  for (ArcIndex e : arcs) out.push_back(g.receivable(e).id);
  return out;
}

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("parallel arcs give distinct cycles") {
    RMultigraph g({loose("u"), loose("v")},
                  {arc("a", "u", "v", 1), arc("b", "u", "v", 2), arc("c", "v", "u", 3)});
    CycleSet cs = enumerate_cycles(g, 15);
    REQUIRE(cs.cycles.size() == 2);
    CHECK(cs.cycles[0].arcs == std::vector<ArcIndex>{0, 2});
    CHECK(cs.cycles[0].amount == 4);
    CHECK(cs.cycles[1].arcs == std::vector<ArcIndex>{1, 2});
    CHECK_FALSE(cs.truncated);
  }

  TEST_CASE("length bound and argument check") {
    RMultigraph tri({loose("u"), loose("v"), loose("w")},
                    {arc("a", "u", "v", 5), arc("b", "v", "w", 5), arc("c", "w", "u", 5)});
    CHECK(enumerate_cycles(tri, 2).cycles.empty());
    CHECK(enumerate_cycles(tri, 3).cycles.size() == 1);
    CHECK_THROWS_AS(enumerate_cycles(tri, 1), ContractViolation);
  }

  TEST_CASE("worked example cycles") {
    RMultigraph g = fixtures::worked_day1();
    CycleSet cs = enumerate_cycles(g, 15);
    std::set<std::set<std::string>> found;
    for (const Cycle& c : cs.cycles) {
      auto names = ids(g, c.arcs);
      found.insert({names.begin(), names.end()});
    }
    // the A-B-D-E ring in its four parallel-arc versions
    for (const char* ab : {"r3", "r4"}) {
      for (const char* bd : {"r6", "r7"}) {
        CHECK(found.count({ab, bd, "r2", "r5"}) == 1);
        CHECK(found.count({ab, bd, "r1"}) == 1);
      }
    }
    CHECK(found.count({"r1", "r3", "r6"}) == 1);
    CHECK(cs.cycles.size() == 10);
  }

  TEST_CASE("budget truncates") {
    RMultigraph g = fixtures::worked_day1();
    CycleSet cs = enumerate_cycles(g, 15, 3);
    CHECK(cs.cycles.size() == 3);
    CHECK(cs.truncated);
  }

  TEST_CASE("paths") {
    RMultigraph g = fixtures::worked_day1();
    NodeIndex e = *g.find_node("E"), b = *g.find_node("B");
    PathSet ps = enumerate_paths(g, std::vector<NodeIndex>{e}, std::vector<NodeIndex>{b}, 15);
    std::set<std::vector<std::string>> found;
    for (const Path& p : ps.paths) found.insert(ids(g, p.arcs));
    CHECK(found.count({"r9", "r8"}) == 1);

    RMultigraph ring({loose("u"), loose("v")}, {arc("a", "u", "v", 1), arc("b", "v", "u", 1)});
    std::vector<NodeIndex> u{0};
    CHECK(enumerate_paths(ring, u, u, 15).paths.empty());

    RMultigraph apart({loose("a"), loose("b"), loose("c"), loose("d")},
                      {arc("1", "a", "b", 1), arc("2", "c", "d", 1)});
    CHECK(enumerate_paths(apart, std::vector<NodeIndex>{0}, std::vector<NodeIndex>{3}, 15)
              .paths.empty());
  }

  TEST_CASE("property: enumeration matches exhaustive DFS") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 100; ++round) {
      RMultigraph g = gen::graph(rng, {.max_nodes = 8, .max_arcs = 14});
      const int len = static_cast<int>(gen::uniform(rng, 2, 8));
      CycleSet cs = enumerate_cycles(g, len);
      std::set<std::vector<ArcIndex>> mine;
      for (const Cycle& c : cs.cycles) {
        CHECK(mine.insert(c.arcs).second);
        Money amount = 0;
        for (ArcIndex a : c.arcs) amount += g.arc(a).amount;
        CHECK(amount == c.amount);
      }
      CHECK(mine == oracle::cycles(g, len));

      std::vector<NodeIndex> sources, targets;
      for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
        if (gen::uniform(rng, 0, 2) == 0) sources.push_back(u);
        if (gen::uniform(rng, 0, 2) == 0) targets.push_back(u);
      }
      const int plen = static_cast<int>(gen::uniform(rng, 1, 8));
      PathSet ps = enumerate_paths(g, sources, targets, plen);
      std::multiset<std::vector<ArcIndex>> paths;
      for (const Path& p : ps.paths) paths.insert(p.arcs);
      CHECK(paths == oracle::paths(g, sources, targets, plen));
    }
  }
}
