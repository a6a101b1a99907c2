#pragma once

#include "netsettle/core.hpp"

namespace netsettle {

// Removal baseline: starting from every arc, drop the smallest arc touching
// a node outside its margins until none is, then peel to the (1,1)-D-core;
// repeat until both hold. Amount ties go to the smaller arc index.
Settlement rfb(const RMultigraph& g);

}  // namespace netsettle
