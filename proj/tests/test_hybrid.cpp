#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "netsettle/exact.hpp"
#include "netsettle/hybrid.hpp"
#include "netsettle/preprocess.hpp"
#include "oracles.hpp"

using namespace netsettle;

TEST_SUITE("hybrid") {
  TEST_CASE("worked example is solved exactly") {
    RMultigraph g = fixtures::worked_day1();
    Settlement s = settle_h(g);
    CHECK(s.total == 5600);
    CHECK(arc_ids(g, s) == fixtures::worked_day1_optimum());
    CHECK(settle_h(fixtures::worked_day2()).arcs.empty());
  }

  TEST_CASE("budget exhaustion falls back to the heuristic") {
    RMultigraph g = fixtures::worked_day1();
    HybridOptions o;
    o.node_budget = 1;
    Settlement s = settle_h(g, o);
    CHECK(s.flags.exact_fallbacks == 1);
    CHECK(s.arcs == settle_beam(g).arcs);
  }

  TEST_CASE("property: dispatch degenerates to its parts") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 100; ++round) {
      RMultigraph g = gen::graph(rng, {.max_nodes = 9, .max_arcs = 16});
      Settlement exact = settle_h(g, {.h = 1000});
      CHECK(exact.total == brute_force_optimal(g).total);
      CHECK(oracle::feasible(g, exact.arcs));

      HybridOptions beam_only;
      beam_only.h = 0;
      CHECK(settle_h(g, beam_only).arcs == settle_beam(g).arcs);
      beam_only.use_paths = true;
      CHECK(settle_h(g, beam_only).arcs == settle_path(g).arcs);
    }
  }

  TEST_CASE("property: exact small parts never lose to the beam") {
    std::mt19937_64 rng(62);
    for (int round = 0; round < 60; ++round) {
      // several small random blocks glued into one graph with disjoint ids
      std::vector<CustomerAccount> accounts;
      std::vector<Receivable> receivables;
      const int blocks = static_cast<int>(gen::uniform(rng, 2, 4));
      for (int b = 0; b < blocks; ++b) {
        RMultigraph part = gen::graph(rng, {.max_nodes = 6, .max_arcs = b == 0 ? 30 : 12});
        const std::string tag = "b" + std::to_string(b) + "_";
        for (CustomerAccount a : part.accounts()) {
          a.id = tag + a.id;
          accounts.push_back(a);
        }
        for (ArcIndex e = 0; e < part.num_arcs(); ++e) {
          Receivable r = part.receivable(e);
          r.id = tag + r.id;
          r.debtor = tag + r.debtor;
          r.creditor = tag + r.creditor;
          receivables.push_back(r);
        }
      }
      RMultigraph g(accounts, receivables);
      Settlement h = settle_h(g, {.h = 14});
      Settlement h_path = settle_h(g, {.h = 14, .use_paths = true});
      Settlement beam = settle_beam(g);
      CHECK(oracle::feasible(g, h.arcs));
      CHECK(oracle::feasible(g, h_path.arcs));
      CHECK(h.total >= beam.total);
      CHECK(h_path.total >= beam.total);
    }
  }
}
