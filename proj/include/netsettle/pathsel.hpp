#pragma once

#include "netsettle/beam.hpp"
#include "netsettle/core.hpp"

namespace netsettle {

enum class PathVariant { kGreedy, kBeam };

struct PathOptions {
  BeamOptions beam;
  int k_p = 1000;
  int max_path_len = 15;
  PathVariant variant = PathVariant::kGreedy;
};

// Extends a committed beam run on one graph with paths joining its cycles.
// Returns the arcs added, ascending; `truncated` reports a cut-off path
// enumeration.
std::vector<ArcIndex> augment_with_paths(const RMultigraph& g, const BeamRun& run,
                                         const PathOptions& options, bool& truncated);

// Beam search followed by path augmentation, per weakly connected component
// of the preprocessed graph.
Settlement settle_path(const RMultigraph& g, const PathOptions& options = {});

}  // namespace netsettle
