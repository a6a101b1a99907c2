#include "netsettle/solver.hpp"

#include <array>
#include <utility>

#include "netsettle/baseline.hpp"
#include "netsettle/exact.hpp"

namespace netsettle {

namespace {

constexpr std::array<std::pair<std::string_view, Algorithm>, 10> kNames{{
    {"bb", Algorithm::kBb},
    {"bb-lb", Algorithm::kBbLb},
    {"beam", Algorithm::kBeam},
    {"path-g", Algorithm::kPathGreedy},
    {"path-s", Algorithm::kPathBeam},
    {"h", Algorithm::kHybrid},
    {"h-path", Algorithm::kHybridPath},
    {"rfb", Algorithm::kRfb},
    {"redefine-floors", Algorithm::kRedefineFloors},
    {"select-and-order", Algorithm::kSelectAndOrder},
}};

BeamOptions beam_options(const SolverConfig& c) {
  return {.k = c.k, .max_len = c.max_len, .cycle_budget = c.cycle_budget};
}

PathOptions path_options(const SolverConfig& c, PathVariant variant) {
  return {.beam = beam_options(c), .k_p = c.k_p, .max_path_len = c.max_path_len, .variant = variant};
}

ExactOptions exact_options(const SolverConfig& c) {
  ExactOptions o;
  o.max_len = c.max_len;
  o.node_budget = c.node_budget;
  o.cycle_budget = c.cycle_budget;
  return o;
}

HybridOptions hybrid_options(const SolverConfig& c, bool use_paths) {
  return {.h = c.h,
          .use_paths = use_paths,
          .heuristic = path_options(c, c.path_variant),
          .node_budget = c.node_budget};
}

}  // namespace

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name.starts_with("settle-")) name.remove_prefix(7);
  for (const auto& [text, algo] : kNames) {
    if (text == name) return algo;
  }
  return std::nullopt;
}

std::string_view algorithm_name(Algorithm algo) {
  for (const auto& [text, a] : kNames) {
    if (a == algo) return text;
  }
  return "?";
}

SolveOutcome run_solver(const RMultigraph& g, const SolverConfig& c) {
  SolveOutcome out;
  auto ordered = [&](const OrderedSettlement& o) {
    out.settlement = to_settlement(g, o);
    out.order = o.arcs;
    out.ordered = true;
  };
  switch (c.algo) {
    case Algorithm::kBb:
      out.settlement = settle_bb(g, exact_options(c));
      break;
    case Algorithm::kBbLb:
      out.settlement = settle_bb_lb(g, {}, {}, c.max_len, c.cycle_budget);
      break;
    case Algorithm::kBeam:
      out.settlement = settle_beam(g, beam_options(c));
      break;
    case Algorithm::kPathGreedy:
      out.settlement = settle_path(g, path_options(c, PathVariant::kGreedy));
      break;
    case Algorithm::kPathBeam:
      out.settlement = settle_path(g, path_options(c, PathVariant::kBeam));
      break;
    case Algorithm::kHybrid:
      out.settlement = settle_h(g, hybrid_options(c, false));
      break;
    case Algorithm::kHybridPath:
      out.settlement = settle_h(g, hybrid_options(c, true));
      break;
    case Algorithm::kRfb:
      out.settlement = rfb(g);
      break;
    case Algorithm::kRedefineFloors: {
      SolverConfig inner = c;
      inner.algo = Algorithm::kHybrid;
      ordered(redefine_floors(g, [&](const RMultigraph& round) {
        return run_solver(round, inner).settlement;
      }));
      break;
    }
    case Algorithm::kSelectAndOrder:
      ordered(select_and_order(g));
      break;
  }
  return out;
}

}  // namespace netsettle
