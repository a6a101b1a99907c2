#pragma once

#include <span>
#include <vector>

#include "netsettle/core.hpp"

namespace netsettle {

// Maximal arc subset in which every spanned node has an incoming and an
// outgoing arc. Result is ascending.
std::vector<ArcIndex> d_core_11(const RMultigraph& g);
std::vector<ArcIndex> d_core_11(const RMultigraph& g, std::span<const ArcIndex> arcs);

// Nodes that cannot be spanned by any feasible settlement drawn from `arcs`,
// judged from the extreme values their net inflow can take.
std::vector<NodeIndex> balance_bound_filter(const RMultigraph& g,
                                            std::span<const ArcIndex> arcs);
std::vector<NodeIndex> balance_bound_filter(const RMultigraph& g);

// Core extraction and balance filtering repeated to a joint fixpoint.
std::vector<ArcIndex> preprocess(const RMultigraph& g);

struct ComponentSplit {
  // Ordered by smallest node index; arcs ascending within a component.
  std::vector<std::vector<ArcIndex>> components;
};

ComponentSplit split_components(const RMultigraph& g, std::span<const ArcIndex> arcs);
ComponentSplit split_components(const RMultigraph& g);

}  // namespace netsettle
